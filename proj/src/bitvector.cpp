#include "crl/bitvector.hpp"

#include <bit>
#include <cassert>

namespace crl {

namespace {

std::size_t word_count(std::size_t n) { return (n + BitVector::kWordBits - 1) / BitVector::kWordBits; }

}  // namespace

BitVector::BitVector(std::size_t n, bool value)
    : size_(n), words_(word_count(n), value ? ~Word{0} : Word{0}) {
    clear_tail();
}

void BitVector::set(std::size_t i, bool value) {
    assert(i < size_);
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

std::size_t BitVector::count() const {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool BitVector::any() const {
    for (Word w : words_) {
        if (w != 0) return true;
    }
    return false;
}

BitVector& BitVector::and_not(const BitVector& other) {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

BitVector& BitVector::flip() {
    for (Word& w : words_) w = ~w;
    clear_tail();
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

std::vector<std::size_t> BitVector::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        Word bits = words_[w];
        while (bits != 0) {
            out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

void BitVector::clear_tail() {
    const std::size_t rem = size_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
BitVector operator~(BitVector a) { return a.flip(); }

std::size_t count_and(const BitVector& a, const BitVector& b) {
    assert(a.size() == b.size());
    const auto aw = a.words();
    const auto bw = b.words();
    std::size_t total = 0;
    for (std::size_t i = 0; i < aw.size(); ++i) total += static_cast<std::size_t>(std::popcount(aw[i] & bw[i]));
    return total;
}

std::size_t count_and_not(const BitVector& a, const BitVector& b) {
    assert(a.size() == b.size());
    const auto aw = a.words();
    const auto bw = b.words();
    std::size_t total = 0;
    for (std::size_t i = 0; i < aw.size(); ++i) total += static_cast<std::size_t>(std::popcount(aw[i] & ~bw[i]));
    return total;
}

}  // namespace crl
