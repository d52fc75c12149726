#include "ldag/radix.hpp"

#include <limits>

#include "ldag/error.hpp"

namespace ldag {

MixedRadix::MixedRadix(std::vector<int> cardinalities) : cards_(std::move(cardinalities)) {
  strides_.assign(cards_.size(), 1);
  size_ = 1;
  for (std::size_t k = cards_.size(); k-- > 0;) {
    if (cards_[k] < 1) throw InvalidArgument("cardinality must be positive");
    strides_[k] = size_;
    if (size_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(cards_[k]))
      throw StateSpaceTooLarge("mixed-radix space overflows size_t");
    size_ *= static_cast<std::size_t>(cards_[k]);
  }
}

std::size_t MixedRadix::encode(std::span<const int> values) const {
  if (values.size() != cards_.size()) throw InvalidArgument("tuple arity does not match radix");
  std::size_t index = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] < 0 || values[k] >= cards_[k]) throw ValueOutOfRange("tuple coordinate out of range");
    index = index * static_cast<std::size_t>(cards_[k]) + static_cast<std::size_t>(values[k]);
  }
  return index;
}

std::vector<int> MixedRadix::decode(std::size_t index) const {
  std::vector<int> values(cards_.size());
  for (std::size_t k = cards_.size(); k-- > 0;) {
    values[k] = static_cast<int>(index % static_cast<std::size_t>(cards_[k]));
    index /= static_cast<std::size_t>(cards_[k]);
  }
  return values;
}

std::size_t checked_product(std::span<const int> cards, std::size_t limit) {
  std::size_t product = 1;
  for (int c : cards) {
    const auto uc = static_cast<std::size_t>(c);
    if (uc != 0 && product > (limit + 1) / uc) return limit + 1;
    product *= uc;
    if (product > limit) return limit + 1;
  }
  return product;
}

}  // namespace ldag
