#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace vmlat {

/// Arithmetic mode of a computation. Exact values are Gaussian rationals
/// (pairs of arbitrary-precision rationals); approx values are complex
/// doubles compared against the global tolerance. The two modes never mix.
enum class Mode { exact, approx };

inline const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "approx"; }

/// Global tolerance for approx-mode comparisons. Set once before computing;
/// all values are immutable so concurrent readers are fine.
double tolerance();
void set_tolerance(double tau);

enum class ErrorKind {
  input,          // malformed or inconsistent input
  mode_mismatch,  // exact and approx values combined
  singular,       // matrix not invertible (or pivot below threshold)
  cap_exceeded,   // configured size cap hit
  numerical,      // decomposition / splitting failure
  internal,       // consistency check between two routes failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

const char* error_kind_name(ErrorKind k);

/// A scalar in one of the two arithmetic modes.
class Scalar {
 public:
  Scalar() : v_(Gauss{0, 0}) {}  // exact zero

  static Scalar exact(mpq_class re, mpq_class im = 0) {
    Scalar s;
    s.v_ = Gauss{std::move(re), std::move(im)};
    return s;
  }
  static Scalar approx(std::complex<double> z) {
    Scalar s;
    s.v_ = z;
    return s;
  }
  static Scalar zero(Mode m) { return m == Mode::exact ? exact(0) : approx(0.0); }
  static Scalar one(Mode m) { return m == Mode::exact ? exact(1) : approx(1.0); }
  static Scalar imaginary_unit(Mode m) {
    return m == Mode::exact ? exact(0, 1) : approx({0.0, 1.0});
  }
  /// Integer literal in the given mode.
  static Scalar integer(long v, Mode m) {
    return m == Mode::exact ? exact(mpq_class(v)) : approx(double(v));
  }

  Mode mode() const { return std::holds_alternative<Gauss>(v_) ? Mode::exact : Mode::approx; }

  const mpq_class& re() const { return gauss().re; }
  const mpq_class& im() const { return gauss().im; }
  std::complex<double> value() const { return std::get<std::complex<double>>(v_); }

  /// Numeric view usable in either mode (exact converts to double).
  std::complex<double> to_complex() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on exact division by zero
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar conj() const;

  /// Structural zero test: exact equality with 0 in exact mode, |z| == 0 in
  /// approx mode. Tolerance-based decisions belong to the solvers, which
  /// track their own scales.
  bool is_zero() const;

  /// |.|^2 as an exact rational (exact mode only).
  mpq_class norm2() const;
  /// |.| as a double, either mode. Used for pivot-size reporting.
  double abs() const;

  /// Deterministic magnitude comparison for pivot selection: exact mode
  /// compares |a|^2 as rationals, approx mode compares doubles.
  bool magnitude_less(const Scalar& o) const;

  bool exact_eq(const Scalar& o) const;  // exact mode only
  /// Same-mode equality: exact means identical, approx means |a-b| <= tau.
  bool eq(const Scalar& o) const;

  /// Canonical textual form, e.g. "0", "-3/2", "1i", "1/2-3/4i".
  std::string str() const;
  /// Parses the canonical form (exact mode).
  static Scalar parse_exact(const std::string& text);

 private:
  struct Gauss {
    mpq_class re, im;
  };
  const Gauss& gauss() const {
    if (!std::holds_alternative<Gauss>(v_)) throw Error(ErrorKind::mode_mismatch, "exact scalar expected");
    return std::get<Gauss>(v_);
  }
  std::variant<Gauss, std::complex<double>> v_;
};

/// Throws unless both scalars carry the same mode.
void require_same_mode(const Scalar& a, const Scalar& b);

}  // namespace vmlat
