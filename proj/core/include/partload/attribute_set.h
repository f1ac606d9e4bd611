#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace partload {

// Fixed-universe set of attribute positions (0-based, raw-file order),
// stored as a bitset. Iteration order is always ascending.
class AttributeSet {
 public:
  AttributeSet() = default;
  explicit AttributeSet(std::size_t universe);
  AttributeSet(std::size_t universe, std::span<const int> members);
  AttributeSet(std::size_t universe, std::initializer_list<int> members);

  static AttributeSet all(std::size_t universe);

  std::size_t universe() const { return universe_; }

  bool contains(int a) const {
    return (words_[static_cast<std::size_t>(a) >> 6] >> (a & 63)) & 1u;
  }
  void insert(int a) {
    words_[static_cast<std::size_t>(a) >> 6] |= std::uint64_t{1} << (a & 63);
  }
  void erase(int a) {
    words_[static_cast<std::size_t>(a) >> 6] &= ~(std::uint64_t{1} << (a & 63));
  }

  std::size_t count() const;
  bool empty() const;
  // Largest member, or -1 when empty.
  int max_index() const;
  std::vector<int> indices() const;

  bool is_subset_of(const AttributeSet& other) const;
  bool contains_all(std::span<const int> members) const;

  AttributeSet& operator|=(const AttributeSet& other);
  friend AttributeSet operator|(AttributeSet a, const AttributeSet& b) {
    a |= b;
    return a;
  }
  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

  // Lexicographic order on the ascending member sequences ({} < {0} < {0,1} < {1}).
  friend bool lex_less(const AttributeSet& a, const AttributeSet& b);

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<int>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace partload
