#include "symdyn/stream.hpp"

#include <algorithm>
#include <stdexcept>

namespace symdyn {

std::string format_word(const Word& w) {
    static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    out.reserve(w.size());
    for (Symbol s : w) {
        if (s < 36) {
            out.push_back(kDigits[s]);
        } else {
            out += '<' + std::to_string(s) + '>';
        }
    }
    return out;
}

void SymbolSource::fill(std::uint64_t start, std::span<Symbol> out) const {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(start + i);
}

Word SymbolSource::prefix(std::uint64_t count) const {
    Word w(count);
    fill(0, w);
    return w;
}

SymbolStream::SymbolStream(SourcePtr source, std::uint64_t start)
    : source_(std::move(source)), position_(start) {
    if (!source_) throw std::invalid_argument("SymbolStream: null source");
}

Symbol SymbolStream::next() {
    if (position_ < buffer_start_ || position_ >= buffer_start_ + buffer_.size()) {
        if (position_ >= source_->length()) throw std::out_of_range("SymbolStream: end of sequence");
        buffer_start_ = position_;
        buffer_.assign(std::min<std::uint64_t>(kChunk, source_->length() - position_), 0);
        source_->fill(buffer_start_, buffer_);
    }
    return buffer_[position_++ - buffer_start_];
}

Word SymbolStream::take(std::size_t count) {
    Word out(count);
    for (auto& s : out) s = next();
    return out;
}

WordSource::WordSource(Word word, std::size_t alphabet_size, std::string name)
    : word_(std::move(word)), alphabet_size_(alphabet_size), name_(std::move(name)) {}

Symbol WordSource::at(std::uint64_t n) const {
    if (n >= word_.size()) throw std::out_of_range("WordSource: read past end of word");
    return word_[n];
}

PeriodicSource::PeriodicSource(Word period, std::size_t alphabet_size, std::string name)
    : period_(std::move(period)), alphabet_size_(alphabet_size), name_(std::move(name)) {
    if (period_.empty()) throw std::invalid_argument("PeriodicSource: empty period");
}

MappedSource::MappedSource(SourcePtr inner, std::vector<Symbol> map, std::size_t alphabet_size,
                           std::string name)
    : inner_(std::move(inner)), map_(std::move(map)), alphabet_size_(alphabet_size),
      name_(std::move(name)) {}

void MappedSource::fill(std::uint64_t start, std::span<Symbol> out) const {
    inner_->fill(start, out);
    for (auto& s : out) s = map_.at(s);
}

}  // namespace symdyn
