#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "symdyn/core.hpp"

namespace symdyn {

/// An immutable one-sided sequence with random access.
///
/// Implementations must be safe for concurrent `at`/`fill` calls: parallel
/// estimators read disjoint index ranges of one source from several threads.
class SymbolSource {
public:
    virtual ~SymbolSource() = default;

    virtual Symbol at(std::uint64_t n) const = 0;

    /// Writes symbols [start, start + out.size()) into `out`.
    virtual void fill(std::uint64_t start, std::span<Symbol> out) const;

    virtual std::size_t alphabet_size() const = 0;
    virtual std::string name() const = 0;

    /// Number of symbols; kInfinite for one-sided infinite sequences.
    virtual std::uint64_t length() const { return kInfinite; }

    static constexpr std::uint64_t kInfinite = ~std::uint64_t{0};

    Word prefix(std::uint64_t count) const;
};

using SourcePtr = std::shared_ptr<const SymbolSource>;

/// Single-consumer cursor over a source. Reads ahead in fixed-size chunks.
class SymbolStream {
public:
    explicit SymbolStream(SourcePtr source, std::uint64_t start = 0);

    Symbol next();
    Word take(std::size_t count);
    std::uint64_t position() const { return position_; }
    const SymbolSource& source() const { return *source_; }

private:
    static constexpr std::size_t kChunk = 4096;

    SourcePtr source_;
    std::uint64_t position_;
    std::uint64_t buffer_start_ = 0;
    Word buffer_;
};

/// Finite word exposed as a source; reading past the end throws std::out_of_range.
class WordSource final : public SymbolSource {
public:
    WordSource(Word word, std::size_t alphabet_size, std::string name = "word");

    Symbol at(std::uint64_t n) const override;
    std::size_t alphabet_size() const override { return alphabet_size_; }
    std::string name() const override { return name_; }
    std::uint64_t length() const override { return word_.size(); }

private:
    Word word_;
    std::size_t alphabet_size_;
    std::string name_;
};

/// Periodic sequence with the given period word.
class PeriodicSource final : public SymbolSource {
public:
    PeriodicSource(Word period, std::size_t alphabet_size, std::string name = "periodic");

    Symbol at(std::uint64_t n) const override { return period_[n % period_.size()]; }
    std::size_t alphabet_size() const override { return alphabet_size_; }
    std::string name() const override { return name_; }

private:
    Word period_;
    std::size_t alphabet_size_;
    std::string name_;
};

/// Pointwise image of a source under a symbol map.
class MappedSource final : public SymbolSource {
public:
    MappedSource(SourcePtr inner, std::vector<Symbol> map, std::size_t alphabet_size, std::string name);

    Symbol at(std::uint64_t n) const override { return map_.at(inner_->at(n)); }
    void fill(std::uint64_t start, std::span<Symbol> out) const override;
    std::size_t alphabet_size() const override { return alphabet_size_; }
    std::string name() const override { return name_; }
    std::uint64_t length() const override { return inner_->length(); }

private:
    SourcePtr inner_;
    std::vector<Symbol> map_;
    std::size_t alphabet_size_;
    std::string name_;
};

}  // namespace symdyn
