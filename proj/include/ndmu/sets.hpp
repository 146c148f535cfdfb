#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace ndmu {

inline constexpr int kMaxUniverse = 64;

// Subset of a fixed indexed universe, packed into one machine word. The tag
// parameter keeps object sets and attribute sets apart at compile time.
template <class Tag>
class IndexSet {
 public:
  constexpr IndexSet() = default;

  static constexpr IndexSet empty() { return IndexSet(); }

  static IndexSet full(int n) {
    check_size(n);
    return IndexSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  static IndexSet single(int i) {
    check_index(i);
    return IndexSet(std::uint64_t{1} << i);
  }

  static constexpr IndexSet from_bits(std::uint64_t bits) { return IndexSet(bits); }
  constexpr std::uint64_t bits() const { return bits_; }

  bool contains(int i) const { return (bits_ >> i) & 1u; }
  void insert(int i) {
    check_index(i);
    bits_ |= std::uint64_t{1} << i;
  }
  void erase(int i) {
    check_index(i);
    bits_ &= ~(std::uint64_t{1} << i);
  }

  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr bool any() const { return bits_ != 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
  constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
  constexpr IndexSet minus(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }
  IndexSet complement_in(int n) const { return full(n).minus(*this); }
  IndexSet& operator|=(IndexSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  IndexSet& operator&=(IndexSet o) {
    bits_ &= o.bits_;
    return *this;
  }

  constexpr bool operator==(const IndexSet&) const = default;

  // Iterates set members in increasing index order.
  class iterator {
   public:
    explicit constexpr iterator(std::uint64_t rest) : rest_(rest) {}
    int operator*() const { return std::countr_zero(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_;
  };
  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

 private:
  explicit constexpr IndexSet(std::uint64_t bits) : bits_(bits) {}

  static void check_size(int n) {
    if (n < 0 || n > kMaxUniverse) throw std::out_of_range("universe size out of range");
  }
  static void check_index(int i) {
    if (i < 0 || i >= kMaxUniverse) throw std::out_of_range("set index out of range");
  }

  std::uint64_t bits_ = 0;
};

struct ObjectTag {};
struct AttributeTag {};

using ObjectSet = IndexSet<ObjectTag>;
using AttributeSet = IndexSet<AttributeTag>;

}  // namespace ndmu
