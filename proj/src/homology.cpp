#include "vcspace/homology.hpp"

#include <algorithm>
#include <sstream>

#include "vcspace/error.hpp"

namespace vcspace {

ChainComplex::ChainComplex(std::vector<std::size_t> counts, std::vector<IntMatrix> boundaries)
    : counts_(std::move(counts)), boundaries_(std::move(boundaries)) {
  if (boundaries_.size() != counts_.size())
    throw invalid_input("DimensionMismatch", "one boundary matrix per dimension expected");
  for (std::size_t d = 0; d < counts_.size(); ++d) {
    const std::size_t rows = d == 0 ? 0 : counts_[d - 1];
    if (boundaries_[d].rows() != rows || boundaries_[d].cols() != counts_[d])
      throw invalid_input("DimensionMismatch", "boundary matrix " + std::to_string(d) + " has the wrong shape");
  }
  labels_.resize(counts_.size());
}

std::size_t ChainComplex::count(int d) const {
  if (d < 0 || d > top_dimension()) return 0;
  return counts_[static_cast<std::size_t>(d)];
}

IntMatrix ChainComplex::boundary(int d) const {
  if (d >= 0 && d <= top_dimension()) return boundaries_[static_cast<std::size_t>(d)];
  return IntMatrix(count(d - 1), count(d));
}

const std::vector<std::string>& ChainComplex::labels(int d) const {
  static const std::vector<std::string> empty;
  if (d < 0 || d > top_dimension()) return empty;
  return labels_[static_cast<std::size_t>(d)];
}

void ChainComplex::set_labels(int d, std::vector<std::string> labels) {
  labels_.at(static_cast<std::size_t>(d)) = std::move(labels);
}

bool ChainComplex::boundary_squared_zero() const {
  for (int d = 2; d <= top_dimension(); ++d)
    if (!(boundary(d - 1) * boundary(d)).is_zero()) return false;
  return true;
}

std::string HomologyResult::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (d) os << ", ";
    std::vector<std::string> parts;
    if (dims[d].betti == 1) parts.push_back("Z");
    if (dims[d].betti > 1) parts.push_back("Z^" + dims[d].betti.get_str());
    for (const auto& t : dims[d].torsion) parts.push_back("Z/" + t.get_str());
    if (parts.empty()) os << "0";
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i];
  }
  os << ")";
  return os.str();
}

HomologyResult homology(const ChainComplex& cc) {
  const int top = cc.top_dimension();
  std::vector<std::vector<Int>> divisors(static_cast<std::size_t>(top + 2));
  for (int d = 1; d <= top; ++d) divisors[static_cast<std::size_t>(d)] = elementary_divisors(cc.boundary(d));
  HomologyResult out;
  for (int d = 0; d <= top; ++d) {
    const auto& into = divisors[static_cast<std::size_t>(d + 1)];
    const auto& from = divisors[static_cast<std::size_t>(d)];
    DimHomology h;
    h.betti = Int(static_cast<long>(cc.count(d))) - Int(static_cast<long>(from.size())) -
              Int(static_cast<long>(into.size()));
    for (const auto& x : into)
      if (x > 1) h.torsion.push_back(x);
    out.dims.push_back(std::move(h));
  }
  return out;
}

std::vector<Int> rational_betti(const ChainComplex& cc) {
  auto rank = [&](int d) -> long {
    IntMatrix b = cc.boundary(d);
    if (b.rows() == 0 || b.cols() == 0) return 0;
    RatMatrix rows(b.rows(), RatVector(b.cols()));
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) rows[i][j] = Rational(b(i, j));
    return static_cast<long>(rational_rank(std::move(rows)));
  };
  std::vector<Int> out;
  for (int d = 0; d <= cc.top_dimension(); ++d)
    out.emplace_back(static_cast<long>(cc.count(d)) - rank(d) - rank(d + 1));
  return out;
}

HomologyResult make_homology(std::vector<long> betti, std::vector<std::vector<long>> torsion) {
  HomologyResult out;
  for (std::size_t d = 0; d < betti.size(); ++d) {
    DimHomology h;
    h.betti = betti[d];
    if (d < torsion.size())
      for (long t : torsion[d]) h.torsion.emplace_back(t);
    out.dims.push_back(std::move(h));
  }
  return out;
}

IntMatrix ChainMap::at(int d, std::size_t rows, std::size_t cols) const {
  if (d >= 0 && static_cast<std::size_t>(d) < maps.size()) {
    const IntMatrix& m = maps[static_cast<std::size_t>(d)];
    if (m.rows() == rows && m.cols() == cols) return m;
    if (m.rows() * m.cols() != 0 || rows * cols != 0)
      throw invalid_input("DimensionMismatch", "chain map block " + std::to_string(d) + " has the wrong shape");
  }
  return IntMatrix(rows, cols);
}

bool is_chain_map(const ChainComplex& source, const ChainComplex& target, const ChainMap& f) {
  const int top = std::max(source.top_dimension(), target.top_dimension());
  for (int d = 1; d <= top; ++d) {
    IntMatrix lhs = target.boundary(d) * f.at(d, target.count(d), source.count(d));
    IntMatrix rhs = f.at(d - 1, target.count(d - 1), source.count(d - 1)) * source.boundary(d);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

ChainMap compose(const ChainMap& second, const ChainMap& first) {
  ChainMap out;
  const std::size_t top = std::min(second.maps.size(), first.maps.size());
  for (std::size_t d = 0; d < top; ++d) out.maps.push_back(second.maps[d] * first.maps[d]);
  return out;
}

CylinderLayout cylinder_layout(const ChainComplex& source, const std::vector<ChainComplex>& targets) {
  int top = source.top_dimension() + 1;
  for (const auto& t : targets) top = std::max(top, t.top_dimension());
  CylinderLayout lay;
  lay.prismStart.assign(targets.size(), {});
  lay.targetStart.assign(targets.size(), {});
  for (int d = 0; d <= top; ++d) {
    std::size_t at = source.count(d);
    lay.sourceCount.push_back(at);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      lay.prismStart[j].push_back(at);
      at += source.count(d - 1);
      lay.targetStart[j].push_back(at);
      at += targets[j].count(d);
    }
  }
  return lay;
}

ChainComplex glue_cylinders(const ChainComplex& source, const std::vector<ChainComplex>& targets,
                            const std::vector<ChainMap>& maps) {
  if (targets.size() != maps.size()) throw invalid_input("DimensionMismatch", "one chain map per cylinder");
  for (std::size_t j = 0; j < targets.size(); ++j)
    if (!is_chain_map(source, targets[j], maps[j]))
      throw invalid_input("NotAChainMap", "cylinder map " + std::to_string(j) + " does not commute with boundaries");
  const CylinderLayout lay = cylinder_layout(source, targets);
  const int top = static_cast<int>(lay.sourceCount.size()) - 1;
  auto total = [&](int d) -> std::size_t {
    if (d < 0 || d > top) return 0;
    std::size_t n = source.count(d);
    for (const auto& t : targets) n += source.count(d - 1) + t.count(d);
    return n;
  };
  std::vector<std::size_t> counts;
  std::vector<IntMatrix> bnd;
  for (int d = 0; d <= top; ++d) {
    counts.push_back(total(d));
    IntMatrix b(total(d - 1), total(d));
    const std::size_t ud = static_cast<std::size_t>(d);
    if (d >= 1) {
      IntMatrix sb = source.boundary(d);
      for (std::size_t c = 0; c < sb.cols(); ++c)
        for (std::size_t r = 0; r < sb.rows(); ++r) b(r, c) = sb(r, c);
    }
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const ChainComplex& t = targets[j];
      // prisms over (d-1)-cells of the source
      if (d >= 1) {
        IntMatrix f = maps[j].at(d - 1, t.count(d - 1), source.count(d - 1));
        IntMatrix sb = source.boundary(d - 1);
        for (std::size_t e = 0; e < source.count(d - 1); ++e) {
          const std::size_t col = lay.prismStart[j][ud] + e;
          for (std::size_t r = 0; r < f.rows(); ++r) b(lay.targetStart[j][ud - 1] + r, col) += f(r, e);
          b(e, col) -= 1;
          if (d >= 2)
            for (std::size_t r = 0; r < sb.rows(); ++r) b(lay.prismStart[j][ud - 1] + r, col) -= sb(r, e);
        }
        IntMatrix tb = t.boundary(d);
        for (std::size_t c = 0; c < tb.cols(); ++c)
          for (std::size_t r = 0; r < tb.rows(); ++r) b(lay.targetStart[j][ud - 1] + r, lay.targetStart[j][ud] + c) = tb(r, c);
      }
    }
    bnd.push_back(std::move(b));
  }
  ChainComplex out(std::move(counts), std::move(bnd));
  for (int d = 0; d <= top; ++d) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < source.count(d); ++i) labels.push_back("base:" + std::to_string(i));
    for (std::size_t j = 0; j < targets.size(); ++j) {
      for (std::size_t i = 0; i < source.count(d - 1); ++i)
        labels.push_back("cyl" + std::to_string(j) + ":prism:" + std::to_string(i));
      for (std::size_t i = 0; i < targets[j].count(d); ++i)
        labels.push_back("cyl" + std::to_string(j) + ":target:" + std::to_string(i));
    }
    out.set_labels(d, std::move(labels));
  }
  return out;
}

ChainComplex mapping_cylinder(const ChainComplex& source, const ChainComplex& target, const ChainMap& f) {
  return glue_cylinders(source, {target}, {f});
}

bool Chain::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& x) { return x == 0; });
}

Chain boundary_of(const ChainComplex& cc, const Chain& c) {
  if (c.coeffs.size() != cc.count(c.dim)) throw invalid_input("DimensionMismatch", "chain length");
  return {c.dim - 1, cc.boundary(c.dim) * c.coeffs};
}

void check_action(const ChainComplex& cc, const FiniteAction& act) {
  auto fail = [](const std::string& why) { throw invalid_input("InvalidAction", why); };
  const int top = cc.top_dimension();
  const std::size_t order = act.order();
  if (order == 0 || act.product.size() != order) fail("missing group data");
  for (std::size_t g = 0; g < order; ++g) {
    if (act.perElement[g].size() != static_cast<std::size_t>(top + 1)) fail("wrong number of dimensions");
    for (int d = 0; d <= top; ++d) {
      const auto& p = act.perElement[g][static_cast<std::size_t>(d)];
      if (p.image.size() != cc.count(d) || p.sign.size() != cc.count(d)) fail("permutation length");
      std::vector<bool> hit(cc.count(d), false);
      for (std::size_t i = 0; i < p.image.size(); ++i) {
        if (p.image[i] >= cc.count(d) || hit[p.image[i]]) fail("not a permutation");
        if (p.sign[i] != 1 && p.sign[i] != -1) fail("sign not +-1");
        hit[p.image[i]] = true;
        if (g == 0 && (p.image[i] != i || p.sign[i] != 1)) fail("element 0 is not the identity");
      }
    }
  }
  for (std::size_t g = 0; g < order; ++g)
    for (std::size_t h = 0; h < order; ++h) {
      const std::size_t gh = act.product[g][h];
      for (int d = 0; d <= top; ++d) {
        const auto& pg = act.perElement[g][static_cast<std::size_t>(d)];
        const auto& ph = act.perElement[h][static_cast<std::size_t>(d)];
        const auto& pgh = act.perElement[gh][static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < cc.count(d); ++i)
          if (pg.image[ph.image[i]] != pgh.image[i] || pg.sign[ph.image[i]] * ph.sign[i] != pgh.sign[i])
            fail("action is not compatible with the group law");
      }
    }
  // sigma_{d-1} * boundary_d == boundary_d * sigma_d
  for (std::size_t g = 0; g < order; ++g)
    for (int d = 1; d <= top; ++d) {
      IntMatrix b = cc.boundary(d);
      const auto& low = act.perElement[g][static_cast<std::size_t>(d - 1)];
      const auto& high = act.perElement[g][static_cast<std::size_t>(d)];
      for (std::size_t e = 0; e < cc.count(d); ++e) {
        const std::size_t ge = high.image[e];
        for (std::size_t r = 0; r < b.rows(); ++r) {
          if (b(r, e) == 0) continue;
          if (b(low.image[r], ge) * high.sign[e] != b(r, e) * low.sign[r])
            fail("element " + std::to_string(g) + " does not commute with the boundary in dimension " +
                 std::to_string(d));
        }
      }
    }
}

QuotientResult quotient_by_action(const ChainComplex& cc, const FiniteAction& act) {
  check_action(cc, act);
  const int top = cc.top_dimension();
  QuotientResult out;
  std::vector<std::vector<std::size_t>> reps(static_cast<std::size_t>(top + 1));
  out.tau.orbit.resize(static_cast<std::size_t>(top + 1));
  out.tau.sign.resize(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    const std::size_t ud = static_cast<std::size_t>(d);
    const std::size_t n = cc.count(d);
    std::vector<std::size_t> rep(n, n);
    std::vector<int> sgn(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t g = 0; g < act.order(); ++g) {
        const auto& p = act.perElement[g][ud];
        if (p.image[c] == c && p.sign[c] != 1)
          throw not_admissible("element " + std::to_string(g) + " reverses cell " + std::to_string(d) + ":" +
                               std::to_string(c));
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (rep[c] != n) continue;
      reps[ud].push_back(c);
      for (std::size_t g = 0; g < act.order(); ++g) {
        const auto& p = act.perElement[g][ud];
        const std::size_t img = p.image[c];
        if (rep[img] == n) {
          rep[img] = c;
          sgn[img] = p.sign[c];
        } else if (sgn[img] != p.sign[c]) {
          throw not_admissible("orbit of cell " + std::to_string(d) + ":" + std::to_string(c) +
                               " identifies a cell with its negative");
        }
      }
    }
    out.tau.orbit[ud].resize(n);
    out.tau.sign[ud] = sgn;
    for (std::size_t c = 0; c < n; ++c) {
      auto it = std::lower_bound(reps[ud].begin(), reps[ud].end(), rep[c]);
      out.tau.orbit[ud][c] = static_cast<std::size_t>(it - reps[ud].begin());
    }
  }
  std::vector<std::size_t> counts;
  std::vector<IntMatrix> bnd;
  for (int d = 0; d <= top; ++d) {
    const std::size_t ud = static_cast<std::size_t>(d);
    counts.push_back(reps[ud].size());
    IntMatrix q(d == 0 ? 0 : reps[ud - 1].size(), reps[ud].size());
    if (d >= 1) {
      IntMatrix b = cc.boundary(d);
      for (std::size_t k = 0; k < reps[ud].size(); ++k) {
        const std::size_t r = reps[ud][k];
        for (std::size_t f = 0; f < b.rows(); ++f) {
          if (b(f, r) == 0) continue;
          q(out.tau.orbit[ud - 1][f], k) += b(f, r) * out.tau.sign[ud - 1][f];
        }
      }
    }
    bnd.push_back(std::move(q));
  }
  out.complex = ChainComplex(std::move(counts), std::move(bnd));
  for (int d = 0; d <= top; ++d) {
    std::vector<std::string> labels;
    for (auto r : reps[static_cast<std::size_t>(d)])
      labels.push_back(cc.labels(d).empty() ? "orbit:" + std::to_string(r) : cc.labels(d)[r]);
    out.complex.set_labels(d, std::move(labels));
  }
  return out;
}

Chain pushforward(const OrbitMap& tau, std::size_t targetCount, const Chain& c) {
  Chain out{c.dim, IntVector(targetCount)};
  const auto& orbit = tau.orbit.at(static_cast<std::size_t>(c.dim));
  const auto& sign = tau.sign.at(static_cast<std::size_t>(c.dim));
  if (orbit.size() != c.coeffs.size()) throw invalid_input("DimensionMismatch", "chain length for pushforward");
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    if (c.coeffs[i] == 0) continue;
    out.coeffs[orbit[i]] += c.coeffs[i] * sign[i];
  }
  return out;
}

std::optional<Chain> find_filling_chain(const ChainComplex& cc, const Chain& target,
                                        const std::vector<std::size_t>& support) {
  const int d = target.dim;
  if (target.coeffs.size() != cc.count(d)) throw invalid_input("DimensionMismatch", "target chain length");
  Chain out{d + 1, IntVector(cc.count(d + 1))};
  if (target.is_zero()) return out;
  IntMatrix b = cc.boundary(d + 1);
  IntMatrix restricted(b.rows(), support.size());
  for (std::size_t j = 0; j < support.size(); ++j)
    for (std::size_t r = 0; r < b.rows(); ++r) restricted(r, j) = b(r, support[j]);
  auto x = solve_linear_integer(restricted, target.coeffs);
  if (!x) return std::nullopt;
  for (std::size_t j = 0; j < support.size(); ++j) out.coeffs[support[j]] = (*x)[j];
  return out;
}

}  // namespace vcspace
