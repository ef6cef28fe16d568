#include "implicitize/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace implicitize {

bool GrlexGreater::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  const long da = std::accumulate(a.begin(), a.end(), 0L);
  const long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(int num_vars, Complex value) {
  Polynomial p(num_vars);
  p.add_term(std::vector<int>(num_vars, 0), value);
  return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw InputError("variable index out of range");
  std::vector<int> e(num_vars, 0);
  e[index] = 1;
  return monomial(num_vars, std::move(e), Complex(1.0, 0.0));
}

Polynomial Polynomial::monomial(int num_vars, std::vector<int> exponents, Complex coefficient) {
  if (static_cast<int>(exponents.size()) != num_vars)
    throw InputError("exponent vector length does not match the variable count");
  Polynomial p(num_vars);
  p.add_term(exponents, coefficient);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // Terms are graded-lex ordered, so the first term carries the total degree.
  const auto& e = terms_.begin()->first;
  return static_cast<int>(std::accumulate(e.begin(), e.end(), 0L));
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = degree();
  for (const auto& [e, c] : terms_) {
    if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
  }
  return true;
}

void Polynomial::add_term(const std::vector<int>& exponents, Complex coefficient) {
  if (static_cast<int>(exponents.size()) != num_vars_)
    throw InputError("exponent vector length does not match the variable count");
  for (int e : exponents) {
    if (e < 0) throw InputError("negative exponent");
  }
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    if (coefficient != Complex(0.0, 0.0)) terms_.emplace(exponents, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(num_vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw InputError("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw InputError("polynomial arity mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial r = *this;
  r += other;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial r = *this;
  r -= other;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.num_vars_ != num_vars_) throw InputError("polynomial arity mismatch");
  Polynomial r(num_vars_);
  std::vector<int> e(num_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (int i = 0; i < num_vars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::operator*(Complex scale) const {
  Polynomial r(num_vars_);
  if (scale == Complex(0.0, 0.0)) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * scale);
  return r;
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw InputError("negative exponent");
  Polynomial result = Polynomial::constant(num_vars_, 1.0);
  Polynomial base = *this;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= num_vars_) throw InputError("variable index out of range");
  Polynomial r(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> de = e;
    de[var] -= 1;
    r.add_term(de, c * static_cast<double>(e[var]));
  }
  return r;
}

Complex Polynomial::evaluate(const Eigen::VectorXcd& point) const {
  if (point.size() != num_vars_) throw InputError("evaluation point has the wrong dimension");
  Complex acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    Complex m = c;
    for (int i = 0; i < num_vars_; ++i) {
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    }
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& values) const {
  if (static_cast<int>(values.size()) != num_vars_)
    throw InputError("substitution list length does not match the variable count");
  const int out_vars = values.empty() ? 0 : values.front().num_vars();
  for (const auto& v : values) {
    if (v.num_vars() != out_vars) throw InputError("substitution polynomials disagree on arity");
  }
  Polynomial acc(out_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(out_vars, c);
    for (int i = 0; i < num_vars_; ++i) {
      if (e[i] > 0) term = term * values[i].pow(e[i]);
    }
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::prepend_variable() const {
  Polynomial r(num_vars_ + 1);
  std::vector<int> e(num_vars_ + 1);
  for (const auto& [old_e, c] : terms_) {
    e[0] = 0;
    std::copy(old_e.begin(), old_e.end(), e.begin() + 1);
    r.terms_.emplace(e, c);
  }
  return r;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  std::string s = "(" + format_double(c.real());
  if (c.imag() >= 0.0) s += "+";
  s += format_double(c.imag()) + "i)";
  return s;
}

}  // namespace

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != num_vars_)
    throw InputError("name list length does not match the variable count");
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    std::string mono;
    for (int i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out << format_coefficient(c);
    } else if (c == Complex(1.0, 0.0)) {
      out << mono;
    } else {
      out << format_coefficient(c) << "*" << mono;
    }
  }
  return out.str();
}

PolynomialMap::PolynomialMap(std::vector<Polynomial> comps) : components(std::move(comps)) {
  if (components.empty()) throw InputError("polynomial map must have at least one component");
  const int n = components.front().num_vars();
  for (const auto& p : components) {
    if (p.num_vars() != n) throw InputError("map components disagree on the variable count");
  }
}

Eigen::VectorXcd PolynomialMap::evaluate(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y(target_dim());
  for (int i = 0; i < target_dim(); ++i) y[i] = components[i].evaluate(x);
  return y;
}

Polynomial AffineForm::to_polynomial() const {
  const int n = static_cast<int>(coefficients.size());
  Polynomial p = Polynomial::constant(n, constant);
  for (int i = 0; i < n; ++i) {
    if (coefficients[i] != Complex(0.0, 0.0))
      p += Polynomial::variable(n, i) * coefficients[i];
  }
  return p;
}

ProblemSpec ProblemSpec::make(std::vector<std::string> variables, std::vector<Polynomial> ideal,
                              PolynomialMap map, bool homogeneous) {
  ProblemSpec spec;
  spec.variables = std::move(variables);
  spec.ideal_generators = std::move(ideal);
  spec.map = std::move(map);
  spec.homogeneous = homogeneous;

  const int n = spec.num_vars();
  if (n <= 0) throw InputError("a problem needs at least one variable");
  if (spec.map.components.empty()) throw InputError("a problem needs at least one map component");
  if (spec.map.num_vars() != n)
    throw InputError("map components and variable list disagree on the variable count");
  for (const auto& g : spec.ideal_generators) {
    if (g.num_vars() != n)
      throw InputError("ideal generators and variable list disagree on the variable count");
  }
  if (spec.homogeneous) {
    for (const auto& g : spec.ideal_generators) {
      if (!g.is_homogeneous())
        throw InputError("homogeneous flag set but an ideal generator is not homogeneous");
    }
    const int d = spec.map.components.front().degree();
    for (const auto& f : spec.map.components) {
      if (!f.is_homogeneous() || f.degree() != d)
        throw InputError(
            "homogeneous flag set but the map components are not homogeneous of one degree");
    }
  }
  return spec;
}

std::vector<std::vector<int>> monomial_basis(int degree, int num_vars) {
  if (degree < 0) throw InputError("monomial basis degree must be nonnegative");
  if (num_vars <= 0) throw InputError("monomial basis needs a positive variable count");
  std::vector<std::vector<int>> basis;
  std::vector<int> current(num_vars, 0);
  // Grlex within one degree is plain lex descending; fill left to right.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == num_vars - 1) {
      current[pos] = remaining;
      basis.push_back(current);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[pos] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  rec(rec, 0, degree);
  return basis;
}

std::vector<std::vector<Polynomial>> jacobian(const std::vector<Polynomial>& polys) {
  if (polys.empty()) return {};
  const int n = polys.front().num_vars();
  for (const auto& p : polys) {
    if (p.num_vars() != n) throw InputError("polynomials disagree on the variable count");
  }
  std::vector<std::vector<Polynomial>> rows;
  rows.reserve(polys.size());
  for (const auto& p : polys) {
    std::vector<Polynomial> row;
    row.reserve(n);
    for (int j = 0; j < n; ++j) row.push_back(p.derivative(j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ConeMap make_cone_map(const ProblemSpec& spec) {
  ConeMap cone;
  if (spec.homogeneous) {
    // Re-verify: the image of a homogeneous map on a homogeneous source is
    // already an affine cone.
    for (const auto& g : spec.ideal_generators) {
      if (!g.is_homogeneous())
        throw InputError("homogeneous flag set but an ideal generator is not homogeneous");
    }
    const int d = spec.map.components.front().degree();
    for (const auto& f : spec.map.components) {
      if (!f.is_homogeneous() || f.degree() != d)
        throw InputError(
            "homogeneous flag set but the map components are not homogeneous of one degree");
    }
    cone.map = spec.map;
    cone.cone_source_dim = spec.num_vars();
    cone.lambda_augmented = false;
    return cone;
  }
  const int n = spec.num_vars();
  const Polynomial lambda = Polynomial::variable(n + 1, 0);
  std::vector<Polynomial> comps;
  comps.reserve(spec.target_dim() + 1);
  comps.push_back(lambda);
  for (const auto& f : spec.map.components) comps.push_back(lambda * f.prepend_variable());
  cone.map = PolynomialMap(std::move(comps));
  cone.cone_source_dim = n + 1;
  cone.lambda_augmented = true;
  return cone;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { kNumber, kIdent, kPlus, kMinus, kStar, kCaret, kLParen, kRParen, kEnd };
  Kind kind;
  double value = 0.0;
  bool imaginary = false;
  std::string text;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    const std::size_t start = i_;
    if (i_ >= src_.size()) return {Token::kEnd, 0.0, false, "", start};
    const char c = src_[i_];
    switch (c) {
      case '+': ++i_; return {Token::kPlus, 0.0, false, "+", start};
      case '-': ++i_; return {Token::kMinus, 0.0, false, "-", start};
      case '*': ++i_; return {Token::kStar, 0.0, false, "*", start};
      case '^': ++i_; return {Token::kCaret, 0.0, false, "^", start};
      case '(': ++i_; return {Token::kLParen, 0.0, false, "(", start};
      case ')': ++i_; return {Token::kRParen, 0.0, false, ")", start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident(start);
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  Token lex_number(std::size_t start) {
    std::size_t j = i_;
    while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
    if (j < src_.size() && src_[j] == '.') {
      ++j;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
    }
    if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
      if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
        ++k;
        while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
        j = k;
      }
    }
    const std::string text = src_.substr(i_, j - i_);
    if (text == ".") throw ParseError("malformed number", start);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) throw ParseError("malformed number", start);
    bool imaginary = false;
    // A trailing bare 'i' marks an imaginary literal, as in 2i or 0.5i.
    if (j < src_.size() && src_[j] == 'i' && !(j + 1 < src_.size() && is_ident_char(src_[j + 1]))) {
      imaginary = true;
      ++j;
    }
    i_ = j;
    return {Token::kNumber, value, imaginary, text, start};
  }

  Token lex_ident(std::size_t start) {
    std::size_t j = i_;
    while (j < src_.size() && is_ident_char(src_[j])) ++j;
    const std::string text = src_.substr(i_, j - i_);
    i_ = j;
    return {Token::kIdent, 0.0, false, text, start};
  }

  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  const std::string& src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(const std::string& src, const std::vector<std::string>& variables)
      : lexer_(src), num_vars_(static_cast<int>(variables.size())) {
    for (int i = 0; i < num_vars_; ++i) var_index_[variables[i]] = i;
    advance();
  }

  Polynomial parse() {
    Polynomial p = expression();
    if (tok_.kind != Token::kEnd) throw ParseError("unexpected trailing input", tok_.pos);
    return p;
  }

 private:
  // expression := term (('+'|'-') term)*
  Polynomial expression() {
    Polynomial acc = term();
    while (tok_.kind == Token::kPlus || tok_.kind == Token::kMinus) {
      const bool minus = tok_.kind == Token::kMinus;
      advance();
      Polynomial rhs = term();
      if (minus)
        acc -= rhs;
      else
        acc += rhs;
    }
    return acc;
  }

  // term := unary ('*' unary)*
  Polynomial term() {
    Polynomial acc = unary();
    while (tok_.kind == Token::kStar) {
      advance();
      acc = acc * unary();
    }
    return acc;
  }

  // unary := ('+'|'-')* power, so -x^2 reads as -(x^2)
  Polynomial unary() {
    if (tok_.kind == Token::kPlus) {
      advance();
      return unary();
    }
    if (tok_.kind == Token::kMinus) {
      advance();
      return -unary();
    }
    return power();
  }

  // power := primary ('^' nonnegative-integer)*
  Polynomial power() {
    Polynomial base = primary();
    while (tok_.kind == Token::kCaret) {
      advance();
      if (tok_.kind == Token::kMinus) throw ParseError("negative exponent", tok_.pos);
      if (tok_.kind != Token::kNumber || tok_.imaginary)
        throw ParseError("exponent must be a nonnegative integer", tok_.pos);
      const double v = tok_.value;
      if (v != static_cast<double>(static_cast<long long>(v)))
        throw ParseError("exponent must be a nonnegative integer", tok_.pos);
      advance();
      base = base.pow(static_cast<int>(v));
    }
    return base;
  }

  Polynomial primary() {
    if (tok_.kind == Token::kNumber) {
      const Complex c = tok_.imaginary ? Complex(0.0, tok_.value) : Complex(tok_.value, 0.0);
      advance();
      return Polynomial::constant(num_vars_, c);
    }
    if (tok_.kind == Token::kIdent) {
      const auto it = var_index_.find(tok_.text);
      if (it != var_index_.end()) {
        const int idx = it->second;
        advance();
        return Polynomial::variable(num_vars_, idx);
      }
      if (tok_.text == "i") {
        advance();
        return Polynomial::constant(num_vars_, Complex(0.0, 1.0));
      }
      throw ParseError("unknown variable '" + tok_.text + "'", tok_.pos);
    }
    if (tok_.kind == Token::kLParen) {
      advance();
      Polynomial inner = expression();
      if (tok_.kind != Token::kRParen) throw ParseError("expected ')'", tok_.pos);
      advance();
      return inner;
    }
    throw ParseError("expected a number, variable, or '('", tok_.pos);
  }

  void advance() { tok_ = lexer_.next(); }

  Lexer lexer_;
  Token tok_;
  int num_vars_;
  std::map<std::string, int> var_index_;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

}  // namespace implicitize
