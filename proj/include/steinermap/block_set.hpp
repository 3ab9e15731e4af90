/*******************************************************************************
 * Connectivity sets as bitsets over target-graph nodes. One inline word covers
 * the common case k <= 64; larger target graphs spill to a heap buffer.
 ******************************************************************************/
#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <memory>
#include <span>
#include <vector>

#include "steinermap/types.hpp"

namespace steinermap {

class BlockSet {
public:
  BlockSet() = default;

  explicit BlockSet(BlockID width) : num_words_((width + 63) / 64) {
    if (num_words_ == 0) {
      num_words_ = 1;
    }
    if (num_words_ > 1) {
      ext_ = std::make_unique<std::uint64_t[]>(num_words_);
      std::memset(ext_.get(), 0, num_words_ * sizeof(std::uint64_t));
    }
  }

  BlockSet(const BlockSet &other) : inline_word_(other.inline_word_), num_words_(other.num_words_) {
    if (other.ext_) {
      ext_ = std::make_unique<std::uint64_t[]>(num_words_);
      std::memcpy(ext_.get(), other.ext_.get(), num_words_ * sizeof(std::uint64_t));
    }
  }

  BlockSet(BlockSet &&other) noexcept = default;

  BlockSet &operator=(const BlockSet &other) {
    if (this != &other) {
      BlockSet copy(other);
      *this = std::move(copy);
    }
    return *this;
  }

  BlockSet &operator=(BlockSet &&other) noexcept = default;

  void add(BlockID b) { word(b / 64) |= std::uint64_t(1) << (b % 64); }
  void remove(BlockID b) { word(b / 64) &= ~(std::uint64_t(1) << (b % 64)); }

  bool contains(BlockID b) const {
    return (word(b / 64) >> (b % 64)) & std::uint64_t(1);
  }

  // popcount over all words, i.e. lambda(e) when this is a connectivity set.
  int size() const {
    int count = 0;
    for (std::uint32_t w = 0; w < num_words_; ++w) {
      count += std::popcount(word(w));
    }
    return count;
  }

  bool empty() const {
    for (std::uint32_t w = 0; w < num_words_; ++w) {
      if (word(w) != 0) {
        return false;
      }
    }
    return true;
  }

  BlockID first() const {
    for (std::uint32_t w = 0; w < num_words_; ++w) {
      if (word(w) != 0) {
        return 64 * w + static_cast<BlockID>(std::countr_zero(word(w)));
      }
    }
    return kInvalidBlock;
  }

  // Visits members in ascending block order via count-trailing-zeros.
  template <typename F> void for_each(F &&f) const {
    for (std::uint32_t w = 0; w < num_words_; ++w) {
      std::uint64_t bits = word(w);
      while (bits != 0) {
        const int bit = std::countr_zero(bits);
        f(static_cast<BlockID>(64 * w + bit));
        bits &= bits - 1;
      }
    }
  }

  std::vector<BlockID> to_vector() const {
    std::vector<BlockID> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](BlockID b) { out.push_back(b); });
    return out;
  }

  BlockSet with(BlockID b) const {
    BlockSet copy(*this);
    copy.add(b);
    return copy;
  }

  BlockSet without(BlockID b) const {
    BlockSet copy(*this);
    copy.remove(b);
    return copy;
  }

  bool is_subset_of(const BlockSet &other) const {
    for (std::uint32_t w = 0; w < num_words_; ++w) {
      if ((word(w) & ~other.word(w)) != 0) {
        return false;
      }
    }
    return true;
  }

  std::span<const std::uint64_t> words() const {
    return {ext_ ? ext_.get() : &inline_word_, num_words_};
  }

  bool operator==(const BlockSet &other) const {
    if (num_words_ != other.num_words_) {
      return false;
    }
    for (std::uint32_t w = 0; w < num_words_; ++w) {
      if (word(w) != other.word(w)) {
        return false;
      }
    }
    return true;
  }

  // The words themselves are the canonical key; hash mixes them directly.
  std::size_t hash() const {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (std::uint32_t w = 0; w < num_words_; ++w) {
      std::uint64_t x = word(w) + 0x9e3779b97f4a7c15ULL;
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ULL;
      x ^= x >> 27;
      h = h * 0xff51afd7ed558ccdULL + x;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

private:
  std::uint64_t &word(std::uint32_t w) { return ext_ ? ext_[w] : inline_word_; }
  std::uint64_t word(std::uint32_t w) const { return ext_ ? ext_[w] : inline_word_; }

  std::uint64_t inline_word_ = 0;
  std::unique_ptr<std::uint64_t[]> ext_;
  std::uint32_t num_words_ = 1;
};

struct BlockSetHash {
  std::size_t operator()(const BlockSet &set) const { return set.hash(); }
};

} // namespace steinermap
