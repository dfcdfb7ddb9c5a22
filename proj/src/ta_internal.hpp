#pragma once

#include <string_view>

#include "cdv/ta_model.hpp"

namespace cdv::ta::detail {

ExprPtr parse_expression(const Network& net, std::string_view text, int line, bool allow_clocks);

/// Records the largest constant each clock is compared with; throws if a
/// clock is compared with anything but a constant.
void collect_clock_bounds(const Expr& e, std::vector<int>& max_const, int line);

void collect_clocks(const Expr& e, std::vector<bool>& used);

}  // namespace cdv::ta::detail
