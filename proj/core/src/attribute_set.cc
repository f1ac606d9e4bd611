#include "partload/attribute_set.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace partload {

AttributeSet::AttributeSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

AttributeSet::AttributeSet(std::size_t universe, std::span<const int> members)
    : AttributeSet(universe) {
  for (int a : members) {
    if (a < 0 || static_cast<std::size_t>(a) >= universe) {
      throw std::out_of_range("attribute index outside universe");
    }
    insert(a);
  }
}

AttributeSet::AttributeSet(std::size_t universe, std::initializer_list<int> members)
    : AttributeSet(universe, std::span<const int>(members.begin(), members.size())) {}

AttributeSet AttributeSet::all(std::size_t universe) {
  AttributeSet s(universe);
  for (std::size_t a = 0; a < universe; ++a) s.insert(static_cast<int>(a));
  return s;
}

std::size_t AttributeSet::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool AttributeSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

int AttributeSet::max_index() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) {
      return static_cast<int>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w])));
    }
  }
  return -1;
}

std::vector<int> AttributeSet::indices() const {
  std::vector<int> out;
  out.reserve(count());
  for_each([&](int a) { out.push_back(a); });
  return out;
}

bool AttributeSet::is_subset_of(const AttributeSet& other) const {
  const std::size_t common = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t rhs = w < common ? other.words_[w] : 0;
    if ((words_[w] & ~rhs) != 0) return false;
  }
  return true;
}

bool AttributeSet::contains_all(std::span<const int> members) const {
  return std::all_of(members.begin(), members.end(), [&](int a) { return contains(a); });
}

AttributeSet& AttributeSet::operator|=(const AttributeSet& other) {
  if (other.universe_ > universe_) {
    universe_ = other.universe_;
    words_.resize(other.words_.size(), 0);
  }
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

bool lex_less(const AttributeSet& a, const AttributeSet& b) {
  const std::vector<int> x = a.indices();
  const std::vector<int> y = b.indices();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace partload
