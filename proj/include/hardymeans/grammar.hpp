#pragma once

#include <string_view>

#include "hardymeans/mean_expr.hpp"

namespace hardymeans {

// Grammar (whitespace allowed between tokens):
//   mean    := "power(" num ")" | "gini(" num "," num ")" | "quasi(" gen ")"
//            | "bajrak(" gen "," gen ")" | "dev(" devspec ")"
//            | "gauss(" mean ("," mean)+ ")"
//            | "arith" | "geom" | "harm" | "min" | "max"
//   gen     := "id" | "log" | "exp" | "pow:" num | "negpow:" num
//   devspec := "arith" | "pair:" gen "," gen
//   num     := decimal literal with optional sign and exponent
//
// Throws ParseError carrying the byte offset and the expected-token set.
MeanExpr parse_mean_expr(std::string_view text);

GeneratorSpec parse_generator(std::string_view text);

}  // namespace hardymeans
