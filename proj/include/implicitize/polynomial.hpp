#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "implicitize/errors.hpp"

namespace implicitize {

using Complex = std::complex<double>;

/// Graded-lexicographic order on exponent vectors, larger terms first:
/// higher total degree wins, ties fall back to lexicographic comparison.
struct GrlexGreater {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

/// Sparse multivariate polynomial with complex coefficients.
///
/// Terms are kept in graded-lexicographic order and coefficients that cancel
/// to exactly zero are dropped, so the term map is a canonical form: two
/// polynomials are equal iff their term maps are. Coefficient pruning is
/// exact-zero only; numerical thresholding belongs to the linear algebra
/// layer.
class Polynomial {
 public:
  using TermMap = std::map<std::vector<int>, Complex, GrlexGreater>;

  explicit Polynomial(int num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(int num_vars, Complex value);
  static Polynomial variable(int num_vars, int index);
  static Polynomial monomial(int num_vars, std::vector<int> exponents, Complex coefficient);

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Maximum total degree over stored terms; the zero polynomial has degree -1.
  int degree() const;
  bool is_homogeneous() const;

  void add_term(const std::vector<int>& exponents, Complex coefficient);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Complex scale) const;

  Polynomial pow(int exponent) const;

  /// Formal partial derivative with respect to the given variable.
  Polynomial derivative(int var) const;

  Complex evaluate(const Eigen::VectorXcd& point) const;

  /// Substitutes values[j] for variable j. All replacement polynomials must
  /// share an arity, which becomes the arity of the result.
  Polynomial substitute(const std::vector<Polynomial>& values) const;

  /// Lifts to num_vars+1 variables; the new variable has index 0 and does not
  /// occur in the result.
  Polynomial prepend_variable() const;

  std::string to_string(const std::vector<std::string>& names) const;

  bool operator==(const Polynomial& other) const = default;

 private:
  int num_vars_;
  TermMap terms_;
};

inline Polynomial operator*(Complex scale, const Polynomial& p) { return p * scale; }

/// Polynomial map A^n -> A^m given by an ordered component list; all
/// components share one arity.
struct PolynomialMap {
  std::vector<Polynomial> components;

  PolynomialMap() = default;
  explicit PolynomialMap(std::vector<Polynomial> comps);

  int num_vars() const { return components.empty() ? 0 : components.front().num_vars(); }
  int target_dim() const { return static_cast<int>(components.size()); }
  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& x) const;
};

/// Affine-linear form coefficients . z + constant.
struct AffineForm {
  Eigen::VectorXcd coefficients;
  Complex constant{0.0, 0.0};

  Complex evaluate(const Eigen::VectorXcd& z) const {
    Complex acc = constant;
    for (Eigen::Index i = 0; i < coefficients.size(); ++i) acc += coefficients[i] * z[i];
    return acc;
  }
  Polynomial to_polynomial() const;
};

/// Problem statement: named variables, ideal generators cutting the source
/// variety, the polynomial map, and the user's homogeneity assertion.
struct ProblemSpec {
  std::vector<std::string> variables;
  std::vector<Polynomial> ideal_generators;
  PolynomialMap map;
  bool homogeneous = false;

  /// Validates arities and, when the homogeneous flag is set, checks that all
  /// generators and components are homogeneous and the components share one
  /// degree. Throws InputError otherwise.
  static ProblemSpec make(std::vector<std::string> variables, std::vector<Polynomial> ideal,
                          PolynomialMap map, bool homogeneous);

  int num_vars() const { return static_cast<int>(variables.size()); }
  int target_dim() const { return map.target_dim(); }
};

/// Parametrization of the affine cone over the projective closure of the
/// image. For homogeneous input the map itself already parametrizes a cone
/// and is kept as-is; otherwise the map is augmented to lambda*(1, F) in a
/// fresh leading variable lambda.
struct ConeMap {
  PolynomialMap map;
  int cone_source_dim = 0;
  bool lambda_augmented = false;

  int ambient_dim() const { return map.target_dim(); }
};

/// Parses a polynomial over the named variables. Grammar: identifiers are
/// variables, '^' binds tighter than '*' binds tighter than '+'/'-', complex
/// literals are written a, bi, or (a+bi); 'i' is the imaginary unit unless
/// declared as a variable. Throws ParseError with the offending position.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

/// All exponent vectors of total degree exactly d over num_vars variables, in
/// graded-lexicographic order.
std::vector<std::vector<int>> monomial_basis(int degree, int num_vars);

/// Jacobian matrix of formal partial derivatives; rows index the polynomials,
/// columns the variables.
std::vector<std::vector<Polynomial>> jacobian(const std::vector<Polynomial>& polys);

ConeMap make_cone_map(const ProblemSpec& spec);

}  // namespace implicitize
