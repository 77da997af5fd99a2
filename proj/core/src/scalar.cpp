#include "vmlat/scalar.hpp"

#include <cmath>
#include <sstream>

namespace vmlat {

namespace {
double g_tolerance = 1e-9;
}

double tolerance() { return g_tolerance; }

void set_tolerance(double tau) {
  if (!(tau >= 0.0)) throw Error(ErrorKind::input, "tolerance must be nonnegative");
  g_tolerance = tau;
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::input: return "input";
    case ErrorKind::mode_mismatch: return "mode_mismatch";
    case ErrorKind::singular: return "singular";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode())
    throw Error(ErrorKind::mode_mismatch, "mixed exact/approx arithmetic is not allowed");
}

std::complex<double> Scalar::to_complex() const {
  if (mode() == Mode::approx) return value();
  return {re().get_d(), im().get_d()};
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_mode(*this, o);
  if (mode() == Mode::exact) return exact(re() + o.re(), im() + o.im());
  return approx(value() + o.value());
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same_mode(*this, o);
  if (mode() == Mode::exact) return exact(re() - o.re(), im() - o.im());
  return approx(value() - o.value());
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_mode(*this, o);
  if (mode() == Mode::exact)
    return exact(re() * o.re() - im() * o.im(), re() * o.im() + im() * o.re());
  return approx(value() * o.value());
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same_mode(*this, o);
  if (mode() == Mode::exact) {
    mpq_class n2 = o.re() * o.re() + o.im() * o.im();
    if (n2 == 0) throw Error(ErrorKind::singular, "exact division by zero");
    return exact((re() * o.re() + im() * o.im()) / n2, (im() * o.re() - re() * o.im()) / n2);
  }
  return approx(value() / o.value());
}

Scalar Scalar::operator-() const {
  if (mode() == Mode::exact) return exact(-re(), -im());
  return approx(-value());
}

Scalar Scalar::conj() const {
  if (mode() == Mode::exact) return exact(re(), -im());
  return approx(std::conj(value()));
}

bool Scalar::is_zero() const {
  if (mode() == Mode::exact) return re() == 0 && im() == 0;
  return value() == std::complex<double>{0.0, 0.0};
}

mpq_class Scalar::norm2() const { return re() * re() + im() * im(); }

double Scalar::abs() const {
  if (mode() == Mode::exact) return std::sqrt(norm2().get_d());
  return std::abs(value());
}

bool Scalar::magnitude_less(const Scalar& o) const {
  require_same_mode(*this, o);
  if (mode() == Mode::exact) return norm2() < o.norm2();
  return std::abs(value()) < std::abs(o.value());
}

bool Scalar::exact_eq(const Scalar& o) const { return re() == o.re() && im() == o.im(); }

bool Scalar::eq(const Scalar& o) const {
  require_same_mode(*this, o);
  if (mode() == Mode::exact) return exact_eq(o);
  return std::abs(value() - o.value()) <= tolerance();
}

namespace {

std::string rational_str(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// Splits "a+bi" / "a-bi" / "a" / "bi" at the sign that separates the two
// parts (a sign not at position 0 and not inside a fraction's "/").
mpq_class parse_rational(std::string s) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw Error(ErrorKind::input, "empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::input, "bad rational: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

std::string Scalar::str() const {
  if (mode() == Mode::approx) {
    std::ostringstream os;
    os.precision(17);
    os << value().real() << (value().imag() < 0 ? "-" : "+") << std::fabs(value().imag()) << "i";
    return os.str();
  }
  const bool has_re = re() != 0;
  const bool has_im = im() != 0;
  if (!has_im) return rational_str(re());
  std::string imag = rational_str(im()) + "i";
  if (!has_re) return imag;
  if (im() > 0) return rational_str(re()) + "+" + imag;
  return rational_str(re()) + imag;  // the minus sign is part of the rational
}

Scalar Scalar::parse_exact(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::input, "empty scalar");

  const bool has_i = s.back() == 'i';
  if (!has_i) return Scalar::exact(parse_rational(s));
  s.pop_back();  // portion up to 'i' plus optional real part

  // Find the split sign separating real and imaginary parts.
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-')
      split = k;  // keep the last candidate: imaginary part follows it
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+") return Scalar::exact(0, 1);
    if (s == "-") return Scalar::exact(0, -1);
    return Scalar::exact(0, parse_rational(s));
  }
  std::string re_part = s.substr(0, split);
  std::string im_part = s.substr(split);
  if (im_part == "+") im_part = "1";
  else if (im_part == "-") im_part = "-1";
  return Scalar::exact(parse_rational(re_part), parse_rational(im_part));
}

}  // namespace vmlat
