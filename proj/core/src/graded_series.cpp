#include "skdv/graded_series.hpp"

#include <sstream>
#include <unordered_map>

namespace skdv {

void Truncation::validate() const {
  if (gmax < 0 || kmax < 0 || dmax < 0 || smax < 0)
    throw std::invalid_argument("truncation bounds must be nonnegative");
}

std::string Truncation::str() const {
  std::ostringstream os;
  os << "gmax=" << gmax << " kmax=" << kmax << " dmax=" << dmax << " smax=" << smax;
  return os.str();
}

nlohmann::json to_json(const Truncation& t) {
  return {{"gmax", t.gmax}, {"kmax", t.kmax}, {"dmax", t.dmax}, {"smax", t.smax}};
}

Truncation truncation_from_json(const nlohmann::json& j) {
  Truncation t{j.at("gmax").get<int>(), j.at("kmax").get<int>(), j.at("dmax").get<int>(),
               j.at("smax").get<int>()};
  t.validate();
  return t;
}

void Substitution::validate() const {
  for (const auto& [k, terms] : rules) {
    for (const auto& term : terms) {
      if (term.index >= 0) continue;
      int w = k < static_cast<int>(weight.size()) ? weight[static_cast<std::size_t>(k)] : 0;
      if (w <= 0)
        throw NonTerminatingSubstitution("constant shift of t_" + std::to_string(k) +
                                         " does not raise the monitored weight");
    }
  }
}

GradedSeries GradedSeries::one(const Truncation& trunc) {
  GradedSeries r(trunc);
  r.add(0, 0, Monomial(), Rational(1));
  return r;
}

bool GradedSeries::admits(const SeriesKey& k) const {
  if (k.t.empty() && k.h == 0 && k.s2 == 0) return true;
  return k.h <= trunc_.hmax() && k.s2 <= trunc_.smax && k.s2 >= -trunc_.hmax() &&
         k.t.degree() <= trunc_.dmax && k.t.max_index() <= trunc_.kmax;
}

void GradedSeries::add(const SeriesKey& k, const Rational& c) {
  if (c.is_zero() || !admits(k)) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational GradedSeries::coefficient(const SeriesKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational() : it->second;
}

void GradedSeries::check_same(const GradedSeries& o) const {
  if (!(trunc_ == o.trunc_))
    throw TruncationMismatch("series truncations differ: " + trunc_.str() + " vs " +
                             o.trunc_.str());
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  check_same(o);
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o) {
  check_same(o);
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

GradedSeries& GradedSeries::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

namespace {

struct TermInfo {
  const SeriesKey* key;
  const Rational* coef;
  int degree;
  int max_index;
};

std::vector<TermInfo> infos(const std::map<SeriesKey, Rational>& terms) {
  std::vector<TermInfo> v;
  v.reserve(terms.size());
  for (const auto& [k, c] : terms) v.push_back({&k, &c, k.t.degree(), k.t.max_index()});
  return v;
}

}  // namespace

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  a.check_same(b);
  const Truncation& t = a.trunc_;
  std::unordered_map<SeriesKey, Rational, SeriesKeyHash> acc;
  auto ia = infos(a.terms_);
  auto ib = infos(b.terms_);
  for (const auto& x : ia) {
    for (const auto& y : ib) {
      if (x.degree + y.degree > t.dmax) continue;
      int h = x.key->h + y.key->h;
      int s2 = x.key->s2 + y.key->s2;
      bool constant = x.degree + y.degree == 0 && h == 0 && s2 == 0;
      if (!constant && (h > t.hmax() || s2 > t.smax || s2 < -t.hmax())) continue;
      SeriesKey k{h, s2, x.key->t * y.key->t};
      auto [it, inserted] = acc.try_emplace(std::move(k), *x.coef);
      if (inserted)
        it->second *= *y.coef;
      else
        it->second += *x.coef * *y.coef;
    }
  }
  GradedSeries r(t);
  for (auto& [k, c] : acc)
    if (!c.is_zero()) r.terms_.emplace(k, std::move(c));
  return r;
}

namespace {

// Nilpotency cap: every admissible product raises degree, hbar power or s^2 power,
// all bounded in the truncation, unless the argument mixes opposite gradings.
int power_cap(const Truncation& t) { return 2 * (t.dmax + t.gmax + t.smax) + 8; }

}  // namespace

GradedSeries GradedSeries::exp() const {
  if (!constant_term().is_zero())
    throw std::invalid_argument("exp needs a series with zero constant term");
  GradedSeries result = one(trunc_);
  GradedSeries power = one(trunc_);
  for (int n = 1;; ++n) {
    power = power * *this;
    power *= Rational(1, n);
    if (power.is_zero()) break;
    if (n > power_cap(trunc_))
      throw std::runtime_error("exp argument is not nilpotent within the truncation");
    result += power;
  }
  return result;
}

GradedSeries GradedSeries::log() const {
  if (!constant_term().is_one())
    throw std::invalid_argument("log needs a series with constant term 1");
  GradedSeries u = *this - one(trunc_);
  GradedSeries result(trunc_);
  GradedSeries power = one(trunc_);
  for (int n = 1;; ++n) {
    power = power * u;
    if (power.is_zero()) break;
    if (n > power_cap(trunc_))
      throw std::runtime_error("log argument is not nilpotent within the truncation");
    result += power * Rational(n % 2 == 1 ? 1 : -1, n);
  }
  return result;
}

GradedSeries GradedSeries::derive(int k) const {
  GradedSeries r(trunc_);
  for (const auto& [key, c] : terms_) {
    int e = key.t.exponent(k);
    if (e == 0) continue;
    r.add(key.h, key.s2, *key.t.lowered(k), c * Rational(e));
  }
  return r;
}

GradedSeries GradedSeries::shifted(int dh, int ds2) const {
  GradedSeries r(trunc_);
  for (const auto& [key, c] : terms_) r.add(key.h + dh, key.s2 + ds2, key.t, c);
  return r;
}

GradedSeries GradedSeries::substitute(const Substitution& sub) const {
  sub.validate();
  bool prune_s2 = true;
  for (const auto& [k, terms] : sub.rules)
    for (const auto& term : terms)
      if (term.ds2 < 0) prune_s2 = false;

  struct Partial {
    Rational coef;
    int s2;
    Monomial t;
  };
  GradedSeries r(trunc_);
  for (const auto& [key, c] : terms_) {
    std::vector<Partial> cur{{c, key.s2, Monomial()}};
    for (auto [index, exponent] : key.t.factors()) {
      auto rule = sub.rules.find(index);
      for (int rep = 0; rep < exponent; ++rep) {
        std::vector<Partial> next;
        auto push = [&](const Partial& p, const Rational& f, int ds2, int target) {
          Partial q{p.coef * f, p.s2 + ds2, p.t};
          if (target >= 0) {
            if (target > trunc_.kmax) return;
            q.t = q.t * Monomial::variable(target);
            if (q.t.degree() > trunc_.dmax) return;
          }
          if (prune_s2 && q.s2 > trunc_.smax) return;
          next.push_back(std::move(q));
        };
        for (const auto& p : cur) {
          if (rule == sub.rules.end()) {
            push(p, Rational(1), 0, index);
          } else {
            for (const auto& term : rule->second) push(p, term.coef, term.ds2, term.index);
          }
        }
        cur = std::move(next);
      }
    }
    for (auto& p : cur) r.add(key.h, p.s2, p.t, p.coef);
  }
  return r;
}

GradedSeries GradedSeries::restricted(const Truncation& trunc) const {
  GradedSeries r(trunc);
  for (const auto& [k, c] : terms_) r.add(k, c);
  return r;
}

GradedSeries GradedSeries::filtered(const std::function<bool(const SeriesKey&)>& keep) const {
  GradedSeries r(trunc_);
  for (const auto& [k, c] : terms_)
    if (keep(k)) r.terms_.emplace(k, c);
  return r;
}

nlohmann::json GradedSeries::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, c] : terms_) {
    nlohmann::json t = nlohmann::json::array();
    for (auto [i, e] : k.t.factors()) t.push_back({i, e});
    arr.push_back({{"h", k.h}, {"s2", k.s2}, {"t", t}, {"v", c.str()}});
  }
  return arr;
}

GradedSeries GradedSeries::from_json(const nlohmann::json& j, const Truncation& trunc) {
  GradedSeries r(trunc);
  for (const auto& e : j) {
    std::vector<Monomial::Factor> f;
    for (const auto& p : e.at("t")) f.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    SeriesKey k{e.at("h").get<int>(), e.at("s2").get<int>(), Monomial(std::move(f))};
    if (!r.admits(k)) throw TruncationMismatch("serialized term outside truncation");
    r.add(k, Rational::parse(e.at("v").get<std::string>()));
  }
  return r;
}

}  // namespace skdv
