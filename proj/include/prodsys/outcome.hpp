#pragma once

#include <optional>
#include <string>
#include <utility>

namespace prodsys {

/// A value, or the reason it could not be computed exactly. Inexactness is a
/// state the caller inspects, not an error.
template <class T>
struct Outcome {
  std::optional<T> value;
  std::string inexact_reason;

  static Outcome exact_value(T v) { return Outcome{std::move(v), {}}; }
  static Outcome inexact(std::string why) { return Outcome{std::nullopt, std::move(why)}; }

  bool exact() const { return value.has_value(); }
};

}  // namespace prodsys
