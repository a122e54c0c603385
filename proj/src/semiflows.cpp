#include "ssp/semiflows.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ssp {

std::vector<int> Semiflow::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] > 0) out.push_back((int)i);
  return out;
}

namespace {

using Vec = std::vector<long long>;

void gcd_normalize(Vec& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x);
  if (g > 1)
    for (long long& x : v) x /= g;
}

bool support_subset(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] == 0) return false;
  return true;
}

// Minimal-support nonnegative annullers of the rows: all x >= 0, gcd 1, with
// rows * x = 0 and support-minimal. Classic Farkas-style elimination keeping
// only support-minimal candidates at each step.
std::vector<Vec> farkas(const std::vector<Vec>& rows, std::size_t n,
                        std::size_t cap) {
  struct Cand {
    Vec x;
    Vec img;  // rows * x
  };
  std::vector<Cand> cands;
  for (std::size_t j = 0; j < n; ++j) {
    Cand c;
    c.x.assign(n, 0);
    c.x[j] = 1;
    c.img.reserve(rows.size());
    for (const Vec& r : rows) c.img.push_back(r[j]);
    cands.push_back(std::move(c));
  }
  auto insert_minimal = [](std::vector<Cand>& out, Cand&& c) {
    for (const Cand& o : out)
      if (support_subset(o.x, c.x)) return;  // dominated (or duplicate support)
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const Cand& o) {
                               return support_subset(c.x, o.x);
                             }),
              out.end());
    out.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Cand> next;
    std::vector<const Cand*> pos, neg;
    for (Cand& c : cands) {
      if (c.img[i] == 0)
        insert_minimal(next, std::move(c));
      else if (c.img[i] > 0)
        pos.push_back(&c);
      else
        neg.push_back(&c);
    }
    for (const Cand* a : pos)
      for (const Cand* b : neg) {
        long long la = -b->img[i], lb = a->img[i];
        Cand c;
        c.x.resize(n);
        for (std::size_t j = 0; j < n; ++j)
          c.x[j] = la * a->x[j] + lb * b->x[j];
        c.img.resize(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
          c.img[r] = la * a->img[r] + lb * b->img[r];
        long long g = 0;
        for (long long v : c.x) g = std::gcd(g, v);
        if (g > 1) {
          for (long long& v : c.x) v /= g;
          for (long long& v : c.img) v /= g;
        }
        insert_minimal(next, std::move(c));
        if (next.size() > cap)
          throw NetError("semiflow basis exceeded cap of " +
                         std::to_string(cap) + " after eliminating row " +
                         std::to_string(i));
      }
    cands = std::move(next);
  }
  std::vector<Vec> out;
  out.reserve(cands.size());
  for (Cand& c : cands) {
    gcd_normalize(c.x);
    out.push_back(std::move(c.x));
  }
  // Canonical order: descending lexicographic on coefficient vectors.
  std::sort(out.begin(), out.end(), std::greater<Vec>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Semiflow> wrap(std::vector<Vec> vecs, char kind) {
  std::vector<Semiflow> out;
  out.reserve(vecs.size());
  for (Vec& v : vecs) out.push_back({kind, std::move(v)});
  return out;
}

PositiveWitness combine_positive(const std::vector<Semiflow>& flows,
                                 std::size_t n) {
  // The sum of all minimal semiflows is strictly positive iff their supports
  // cover every index, which is equivalent to the existence of a strictly
  // positive annuller.
  PositiveWitness w;
  w.witness.assign(n, 0);
  for (const Semiflow& f : flows)
    for (std::size_t i = 0; i < n; ++i) w.witness[i] += f.coeffs[i];
  w.positive =
      n == 0 || std::all_of(w.witness.begin(), w.witness.end(),
                            [](long long v) { return v > 0; });
  if (!w.positive) w.witness.clear();
  return w;
}

}  // namespace

std::vector<Semiflow> minimal_t_semiflows(const Net& net, std::size_t cap) {
  std::vector<Vec> rows(net.n_places(), Vec(net.n_trans()));
  for (int p = 0; p < net.n_places(); ++p)
    for (int t = 0; t < net.n_trans(); ++t) rows[p][t] = net.flow(p, t);
  return wrap(farkas(rows, net.n_trans(), cap), 'T');
}

std::vector<Semiflow> minimal_p_semiflows(const Net& net, std::size_t cap) {
  std::vector<Vec> rows(net.n_trans(), Vec(net.n_places()));
  for (int t = 0; t < net.n_trans(); ++t)
    for (int p = 0; p < net.n_places(); ++p) rows[t][p] = net.flow(p, t);
  return wrap(farkas(rows, net.n_places(), cap), 'P');
}

PositiveWitness is_consistent(const Net& net) {
  return combine_positive(minimal_t_semiflows(net), net.n_trans());
}

PositiveWitness is_conservative(const Net& net) {
  return combine_positive(minimal_p_semiflows(net), net.n_places());
}

std::string multiset_text(const Semiflow& x,
                          const std::vector<std::string>& names,
                          const std::string& lhs) {
  std::ostringstream out;
  out << lhs << " =";
  bool first = true;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i] == 0) continue;
    out << (first ? " " : " + ");
    first = false;
    if (x.coeffs[i] != 1) out << x.coeffs[i] << "*";
    out << names[i];
  }
  if (first) out << " 0";
  return out.str();
}

}  // namespace ssp
