#include "bianchi/coefficients.hpp"

namespace bianchi {

std::size_t invariant_dimension_by_character(const FieldContext& ctx, const std::vector<GroupElement>& group, int n) {
  if (group.empty()) throw std::invalid_argument("invariant_dimension_by_character: empty group");
  KField f(ctx);
  KElem total = f.zero();
  for (const auto& g : group) {
    auto [x, y] = action_factors(f, g, n);
    KElem tx = f.zero(), ty = f.zero();
    for (std::size_t i = 0; i < x.rows; ++i) {
      tx += x.at(i, i);
      ty += y.at(i, i);
    }
    total += tx * ty;
  }
  if (!total.is_rational()) throw ConsistencyError("invariant_dimension_by_character: non-rational character sum");
  Rational dim = total.r / static_cast<long>(group.size());
  if (!is_integer(dim) || sgn(dim) < 0) throw ConsistencyError("invariant_dimension_by_character: non-integral dimension");
  return static_cast<std::size_t>(to_i64(dim.get_num()));
}

}  // namespace bianchi
