#include "hardymeans/grammar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "hardymeans/error.hpp"

namespace hardymeans {

namespace {

constexpr const char* kMeanNames = "power, gini, quasi, bajrak, dev, gauss, arith, geom, harm, min, max";
constexpr const char* kGeneratorNames = "id, log, exp, pow:<num>, negpow:<num>";

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MeanExpr parse_all() {
    MeanExpr e = mean();
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorCode::parse_error, pos_, "end of input", "trailing input");
    return e;
  }

  GeneratorSpec generator_only() {
    GeneratorSpec g = generator();
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorCode::parse_error, pos_, "end of input", "trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, std::size_t at, std::string expected,
                         const std::string& what) {
    std::string msg = what + " at offset " + std::to_string(at);
    if (!expected.empty()) msg += "; expected " + expected;
    throw ParseError(code, at, std::move(expected), msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      fail(ErrorCode::parse_error, pos_, std::string("'") + c + "'",
           pos_ < text_.size() ? std::string("unexpected '") + text_[pos_] + "'"
                               : std::string("unexpected end of input"));
    }
    ++pos_;
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t i = pos_;
    auto digits = [&] {
      const std::size_t d0 = i;
      while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
      return i > d0;
    };
    if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
    bool any = digits();
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      any = digits() || any;
    }
    if (!any) fail(ErrorCode::parse_error, start, "number", "malformed number");
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      const std::size_t d0 = j;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      if (j == d0) fail(ErrorCode::parse_error, j, "exponent digits", "malformed number");
      i = j;
    }
    std::string_view lit = text_.substr(start, i - start);
    if (!lit.empty() && lit.front() == '+') lit.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), v);
    if (ec != std::errc() || ptr != lit.data() + lit.size() || !std::isfinite(v)) {
      fail(ErrorCode::parse_error, start, "finite number", "number out of range");
    }
    pos_ = i;
    return v;
  }

  GeneratorSpec generator() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string_view name = word();
    if (name == "id") return GeneratorSpec::identity();
    if (name == "log") return GeneratorSpec::log();
    if (name == "exp") return GeneratorSpec::exp();
    if (name == "pow" || name == "negpow") {
      expect(':');
      const double p = number();
      return name == "pow" ? GeneratorSpec::pow(p) : GeneratorSpec::neg_pow(p);
    }
    if (name.empty()) fail(ErrorCode::parse_error, at, kGeneratorNames, "expected a generator");
    fail(ErrorCode::unknown_generator, at, kGeneratorNames,
         "unknown generator '" + std::string(name) + "'");
  }

  // '(' item (',' item)* ')', returning the items; arity is checked by the
  // caller against the offset just past ')'.
  template <class Item>
  std::vector<Item> arguments(Item (Parser::*item)()) {
    expect('(');
    std::vector<Item> items;
    items.push_back((this->*item)());
    while (peek(',')) {
      ++pos_;
      items.push_back((this->*item)());
    }
    expect(')');
    return items;
  }

  void arity(std::size_t got, std::size_t want, const char* name) {
    if (got != want) {
      fail(ErrorCode::arity_error, pos_, "",
           std::string(name) + " takes " + std::to_string(want) + " argument(s), got " +
               std::to_string(got));
    }
  }

  template <class F>
  MeanExpr build(std::size_t at, F&& make) {
    try {
      return make();
    } catch (const ParseError&) {
      throw;
    } catch (const MeanError& e) {
      fail(e.code(), at, "", e.what());
    }
  }

  MeanExpr mean() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string_view name = word();
    if (name == "arith") return MeanExpr::arith();
    if (name == "geom") return MeanExpr::geom();
    if (name == "harm") return MeanExpr::harm();
    if (name == "min") return MeanExpr::min();
    if (name == "max") return MeanExpr::max();
    if (name == "power") {
      auto a = arguments(&Parser::number);
      arity(a.size(), 1, "power");
      return build(at, [&] { return MeanExpr::power(a[0]); });
    }
    if (name == "gini") {
      auto a = arguments(&Parser::number);
      arity(a.size(), 2, "gini");
      return build(at, [&] { return MeanExpr::gini(a[0], a[1]); });
    }
    if (name == "quasi") {
      auto a = arguments(&Parser::generator);
      arity(a.size(), 1, "quasi");
      return build(at, [&] { return MeanExpr::quasi_arithmetic(a[0]); });
    }
    if (name == "bajrak") {
      auto a = arguments(&Parser::generator);
      arity(a.size(), 2, "bajrak");
      return build(at, [&] { return MeanExpr::bajraktarevic(a[0], a[1]); });
    }
    if (name == "dev") {
      expect('(');
      skip_ws();
      const std::size_t spec_at = pos_;
      const std::string_view kind = word();
      MeanExpr out = MeanExpr::arith();
      if (kind == "arith") {
        out = MeanExpr::deviation(DeviationSpec::arithmetic());
      } else if (kind == "pair") {
        expect(':');
        const GeneratorSpec f = generator();
        expect(',');
        const GeneratorSpec g = generator();
        out = build(spec_at, [&] { return MeanExpr::deviation(DeviationSpec::pair(f, g)); });
      } else {
        fail(ErrorCode::parse_error, spec_at, "arith, pair:<gen>,<gen>", "expected a deviation spec");
      }
      expect(')');
      return out;
    }
    if (name == "gauss") {
      auto a = arguments(&Parser::mean);
      if (a.size() < 2) {
        fail(ErrorCode::arity_error, pos_, "",
             "gauss takes at least 2 means, got " + std::to_string(a.size()));
      }
      return build(at, [&] { return MeanExpr::gauss(std::move(a)); });
    }
    if (name.empty()) {
      fail(ErrorCode::parse_error, at, kMeanNames,
           at < text_.size() ? "expected a mean" : "unexpected end of input");
    }
    fail(ErrorCode::parse_error, at, kMeanNames, "unknown mean '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MeanExpr parse_mean_expr(std::string_view text) { return Parser(text).parse_all(); }

GeneratorSpec parse_generator(std::string_view text) { return Parser(text).generator_only(); }

}  // namespace hardymeans
