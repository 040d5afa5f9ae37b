#include "hyperpoly/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace hyperpoly {

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto valid = [](const std::string& part) {
    size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start >= part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(start), part.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + s + "'");
  BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rat r(BigInt(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(); }

std::string Var::name() const {
  if (id == kMaxLines) return "s";
  if (id == kMaxLines + 1) return "W";
  return "t" + std::to_string(id + 1);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, int exponent) {
  if (v.id < 0 || v.id >= kMaxVars) throw std::out_of_range("variable id out of range");
  if (exponent < 0 || exponent > kMaxExponent) throw std::overflow_error("exponent out of range");
  Monomial m;
  m.exps_[v.id] = static_cast<std::uint8_t>(exponent);
  m.degree_ = exponent;
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exps_[i] + other.exps_[i];
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    r.exps_[i] = static_cast<std::uint8_t>(e);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ <=> other.degree_;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (exps_[i] != other.exps_[i]) return exps_[i] <=> other.exps_[i];
  return std::strong_ordering::equal;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(long constant) : Poly(Rat(constant)) {}

Poly::Poly(const Rat& constant) {
  if (constant != 0) {
    terms_.push_back({Monomial(), constant});
    terms_.back().coeff.canonicalize();
  }
}

Poly Poly::variable(Var v) { return monomial(Monomial::of(v), Rat(1)); }

Poly Poly::monomial(const Monomial& m, const Rat& coeff) {
  Poly p;
  if (coeff != 0) {
    p.terms_.push_back({m, coeff});
    p.terms_.back().coeff.canonicalize();
  }
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rat Poly::constant_value() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_.empty() ? Rat(0) : terms_[0].coeff;
}

int Poly::degree(Var v) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

std::set<Var> Poly::variables() const {
  std::set<Var> out;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.mono.exponent(Var{i}) > 0) out.insert(Var{i});
  return out;
}

Poly Poly::coefficient(Var v, int e) const {
  Poly out;
  Monomial strip = Monomial::of(v, e);
  for (const auto& t : terms_) {
    if (t.mono.exponent(v) != e) continue;
    Monomial rest;
    for (int i = 0; i < kMaxVars; ++i) {
      int k = t.mono.exponent(Var{i}) - strip.exponent(Var{i});
      if (k > 0) rest = rest * Monomial::of(Var{i}, k);
    }
    out += monomial(rest, t.coeff);
  }
  return out;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merges two descending term lists, applying `sign` to the second.
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                              int sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Rat(-b[j].coeff)});
      ++j;
    } else {
      Rat c = sign > 0 ? Rat(a[i].coeff + b[j].coeff) : Rat(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, +1);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, -1);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  std::vector<Poly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back({x.mono * y.mono, x.coeff * y.coeff});
  std::sort(prod.begin(), prod.end(),
            [](const Poly::Term& l, const Poly::Term& r2) { return l.mono > r2.mono; });
  for (auto& t : prod) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff += t.coeff;
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back(std::move(t));
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly Poly::scaled(const Rat& factor) const {
  if (factor == 0) return Poly();
  Rat f = factor;
  f.canonicalize();
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= f;
  return r;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1L);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Rat Poly::eval(const Assignment& point) const {
  std::array<const Rat*, kMaxVars> values{};
  for (Var v : variables()) {
    auto it = point.find(v);
    if (it == point.end()) throw std::invalid_argument("missing assignment for " + v.name());
    values[v.id] = &it->second;
  }
  Rat sum = 0;
  for (const auto& t : terms_) {
    Rat term = t.coeff;
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.mono.exponent(Var{i});
      if (e == 0) continue;
      Rat pw;
      mpz_pow_ui(pw.get_num_mpz_t(), values[i]->get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(pw.get_den_mpz_t(), values[i]->get_den_mpz_t(), static_cast<unsigned long>(e));
      pw.canonicalize();
      term *= pw;
    }
    sum += term;
  }
  return sum;
}

bool Poly::operator==(const Poly& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coeff != other.terms_[i].coeff)
      return false;
  return true;
}

// ------------------------------------------------------------- rendering

namespace {

std::string render_monomial(const Monomial& m) {
  std::string out;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = m.exponent(Var{i});
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += Var{i}.name();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string canonical_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = t.coeff < 0;
    Rat mag = abs(t.coeff);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = render_monomial(t.mono);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

nlohmann::json to_json(const Poly& p, int num_lines) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    nlohmann::json exps = nlohmann::json::array();
    for (int l = 0; l < num_lines; ++l) exps.push_back(t.mono.exponent(Var::t(l)));
    for (int l = num_lines; l < kMaxLines; ++l)
      if (t.mono.exponent(Var::t(l)) != 0)
        throw std::invalid_argument("term uses t" + std::to_string(l + 1) + " beyond line count");
    exps.push_back(t.mono.exponent(Var::s()));
    exps.push_back(t.mono.exponent(Var::omega()));
    arr.push_back({{"exponents", exps}, {"coeff", t.coeff.get_str()}});
  }
  return arr;
}

// --------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Poly parse() {
    Poly p = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) +
                                ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 't' || c == 's' ||
           c == 'W' || text_.substr(pos_, 2) == "\xCE\xA9";
  }

  Poly expression() {
    skip_ws();
    Poly acc;
    int sign = 1;
    if (peek('-')) {
      ++pos_;
      sign = -1;
    } else if (peek('+')) {
      ++pos_;
    }
    Poly t = term();
    acc = sign > 0 ? t : -t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= power();
      } else if (peek('/')) {
        ++pos_;
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by a non-zero constant");
        acc = acc.scaled(1 / d.constant_value());
      } else if (starts_factor()) {
        acc *= power();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly power() {
    Poly base = factor();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > static_cast<unsigned long>(kMaxExponent)) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expression();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly(Rat(BigInt(std::string(text_.substr(start, pos_ - start)))));
    }
    if (c == 's') {
      ++pos_;
      return Poly::s();
    }
    if (c == 'W') {
      ++pos_;
      return Poly::omega();
    }
    if (text_.substr(pos_, 2) == "\xCE\xA9") {
      pos_ += 2;
      return Poly::omega();
    }
    if (c == 't') {
      ++pos_;
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected line index after 't'");
      unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (k < 1 || k > static_cast<unsigned long>(kMaxLines)) fail("line index out of range");
      return Poly::t(static_cast<int>(k) - 1);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Poly parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace hyperpoly
