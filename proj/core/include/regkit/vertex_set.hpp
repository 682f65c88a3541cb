#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace regkit {

using Word = std::uint64_t;
inline constexpr int kWordBits = 64;

inline int words_for(int n) { return (n + kWordBits - 1) / kWordBits; }

// Popcount of a & b over w words.
inline int and_count(const Word* a, const Word* b, int w) {
  int c = 0;
  for (int i = 0; i < w; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

inline int and3_count(const Word* a, const Word* b, const Word* c, int w) {
  int r = 0;
  for (int i = 0; i < w; ++i) r += std::popcount(a[i] & b[i] & c[i]);
  return r;
}

// Fixed-universe bitset over {0, ..., n-1}.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_(static_cast<std::size_t>(words_for(n)), 0) {}

  static VertexSet full(int n);
  static VertexSet of(int n, std::span<const int> members);
  static VertexSet range(int n, int lo, int hi);  // [lo, hi)

  int universe() const { return n_; }
  int word_count() const { return static_cast<int>(words_.size()); }
  const Word* data() const { return words_.data(); }
  Word* data() { return words_.data(); }

  bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(int v) { words_[v >> 6] |= Word{1} << (v & 63); }
  void reset(int v) { words_[v >> 6] &= ~(Word{1} << (v & 63)); }
  void clear();

  int count() const;
  bool empty() const;

  VertexSet& operator&=(const VertexSet& o);
  VertexSet& operator|=(const VertexSet& o);
  VertexSet& operator-=(const VertexSet& o);  // set difference
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  bool intersects(const VertexSet& o) const;
  bool subset_of(const VertexSet& o) const;
  int intersection_count(const VertexSet& o) const {
    return and_count(data(), o.data(), word_count());
  }

  std::vector<int> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (int wi = 0; wi < word_count(); ++wi) {
      Word w = words_[static_cast<std::size_t>(wi)];
      while (w != 0) {
        int b = std::countr_zero(w);
        f(wi * kWordBits + b);
        w &= w - 1;
      }
    }
  }

 private:
  int n_ = 0;
  std::vector<Word> words_;
};

}  // namespace regkit
