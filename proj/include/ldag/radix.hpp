#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ldag {

// Mixed-radix encoding of tuples of categorical values. The first
// coordinate is the most significant one, so with coordinates listed in
// ascending node id the lowest node id varies slowest.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<int> cardinalities);

  std::size_t size() const noexcept { return size_; }
  std::size_t arity() const noexcept { return cards_.size(); }
  const std::vector<int>& cardinalities() const noexcept { return cards_; }
  std::size_t stride(std::size_t k) const noexcept { return strides_[k]; }

  std::size_t encode(std::span<const int> values) const;
  std::vector<int> decode(std::size_t index) const;
  int digit(std::size_t index, std::size_t k) const noexcept {
    return static_cast<int>((index / strides_[k]) % static_cast<std::size_t>(cards_[k]));
  }

  // Index over the remaining coordinates after dropping coordinate k.
  std::size_t drop(std::size_t index, std::size_t k) const noexcept {
    const std::size_t low = index % strides_[k];
    const std::size_t high = index / (strides_[k] * static_cast<std::size_t>(cards_[k]));
    return high * strides_[k] + low;
  }

  // Inverse of drop(): reinsert value at coordinate k.
  std::size_t insert(std::size_t reduced, std::size_t k, int value) const noexcept {
    const std::size_t low = reduced % strides_[k];
    const std::size_t high = reduced / strides_[k];
    return (high * static_cast<std::size_t>(cards_[k]) + static_cast<std::size_t>(value)) * strides_[k] + low;
  }

  bool operator==(const MixedRadix&) const = default;

 private:
  std::vector<int> cards_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// Saturating product of cardinalities; returns limit + 1 on overflow past limit.
std::size_t checked_product(std::span<const int> cards, std::size_t limit);

}  // namespace ldag
