#pragma once

// Text syntax for Wick elements: sums of `c*i(s:label)i*(t:label)` with
// complex coefficients written `re+imj`. A lone coefficient stands for a
// multiple of the identity; `i(s:l)` or `i*(t:l)` alone leaves the other
// side at the identity grade.

#include <stdexcept>
#include <string_view>

#include "prodsys/product_system.hpp"
#include "prodsys/wick.hpp"

namespace prodsys {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Complex parse_complex(std::string_view text);
/// Digits ("0102") or comma-separated symbols ("0,11,3"); empty for E_e.
BasisLabel parse_label(std::string_view text);
WickElement parse_expression(const ProductSystem& sys, std::string_view text);

}  // namespace prodsys
