#ifndef CRL_BITVECTOR_HPP
#define CRL_BITVECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace crl {

/// Fixed-length bit vector over dataset rows (or feature slots).
///
/// Bits past size() in the last word are always zero, so popcounts and
/// equality never need masking. Every operation that could set them
/// (flip, construction with `true`) clears them again.
class BitVector {
 public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t n, bool value = false);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value = true);

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }

    /// this &= ~other
    BitVector& and_not(const BitVector& other);
    BitVector& flip();

    BitVector& operator&=(const BitVector& other);
    BitVector& operator|=(const BitVector& other);
    BitVector& operator^=(const BitVector& other);

    /// Set bit positions in increasing order.
    std::vector<std::size_t> indices() const;

    std::span<const Word> words() const { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
    void clear_tail();

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

BitVector operator&(BitVector a, const BitVector& b);
BitVector operator|(BitVector a, const BitVector& b);
BitVector operator^(BitVector a, const BitVector& b);
BitVector operator~(BitVector a);

/// popcount(a & b) without materializing the intersection.
std::size_t count_and(const BitVector& a, const BitVector& b);
/// popcount(a & ~b)
std::size_t count_and_not(const BitVector& a, const BitVector& b);

}  // namespace crl

#endif  // CRL_BITVECTOR_HPP
