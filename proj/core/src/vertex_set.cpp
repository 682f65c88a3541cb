#include "regkit/vertex_set.hpp"

#include <algorithm>

#include "regkit/error.hpp"

namespace regkit {

VertexSet VertexSet::full(int n) {
  VertexSet s(n);
  for (int wi = 0; wi < s.word_count(); ++wi) s.words_[static_cast<std::size_t>(wi)] = ~Word{0};
  int tail = n % kWordBits;
  if (tail != 0) s.words_.back() = (Word{1} << tail) - 1;
  return s;
}

VertexSet VertexSet::of(int n, std::span<const int> members) {
  VertexSet s(n);
  for (int v : members) {
    if (v < 0 || v >= n) throw DomainError("vertex out of range");
    s.set(v);
  }
  return s;
}

VertexSet VertexSet::range(int n, int lo, int hi) {
  VertexSet s(n);
  for (int v = lo; v < hi; ++v) s.set(v);
  return s;
}

void VertexSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

int VertexSet::count() const {
  int c = 0;
  for (Word w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

bool VertexSet::intersects(const VertexSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & o.words_[i]) != 0) return true;
  return false;
}

bool VertexSet::subset_of(const VertexSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~o.words_[i]) != 0) return false;
  return true;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count()));
  for_each([&](int v) { out.push_back(v); });
  return out;
}

}  // namespace regkit
