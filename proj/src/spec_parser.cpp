#include "ineq/spec_parser.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "ineq/estimators.hpp"

namespace ineq {
namespace {

constexpr double kMixTolerance = 1e-9;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Distribution parse() {
    Distribution d = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  double number() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '+') start = ++pos_;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + text_.size(), value);
    if (ec != std::errc() || !std::isfinite(value)) fail("expected a finite number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  Distribution expr() {
    skip_space();
    const std::size_t start = pos_;
    const std::string_view name = identifier();
    try {
      if (name == "atom") {
        expect('(');
        const double x = number();
        expect(')');
        return Distribution::atom(x);
      }
      if (name == "uniform" || name == "lognormal" || name == "gamma") {
        expect('(');
        const double a = number();
        expect(',');
        const double b = number();
        expect(')');
        if (name == "uniform") return Distribution::uniform(a, b);
        if (name == "lognormal") return Distribution::lognormal(a, b);
        return Distribution::gamma(a, b);
      }
      if (name == "exp") {
        expect('(');
        const double rate = number();
        expect(')');
        return Distribution::exponential(rate);
      }
      if (name == "mix") return mix();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string(name) + ": " + e.what(), start + 1);
    }
    pos_ = start;
    fail("expected atom, uniform, lognormal, gamma, exp or mix");
  }

  Distribution mix() {
    expect('(');
    std::vector<std::pair<double, Distribution>> parts;
    double total = 0.0;
    while (true) {
      const double w = number();
      if (!(w > 0.0)) fail("mixture weight must be positive");
      expect('*');
      parts.emplace_back(w, expr());
      total += w;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      break;
    }
    if (std::abs(total - 1.0) > kMixTolerance) fail("mixture weights must sum to 1");
    for (auto& part : parts) part.first /= total;
    return mixture(parts);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t position)
    : ValidationError("parse error at column " + std::to_string(position) + ": " + message),
      position_(position) {}

Distribution parse_distribution_spec(std::string_view text) {
  constexpr std::string_view kFile = "file:";
  if (text.substr(0, kFile.size()) == kFile) {
    return empirical(read_sample_file(std::string(text.substr(kFile.size()))));
  }
  return Parser(text).parse();
}

}  // namespace ineq
