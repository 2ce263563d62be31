#include "diagx/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace diagx {

namespace {

enum class MemberKind { Real, Pair, FreeComplex };

// A clustering site in the closed upper half-plane.  Conjugate pairs enter
// as one site of weight two, which is what keeps the final partition
// mirror-symmetric no matter the merge order.
struct Site {
  Complex pos;
  double weight = 1.0;
  std::vector<std::pair<Complex, MemberKind>> members;
};

double dist(const Site& a, const Site& b) { return std::abs(a.pos - b.pos); }

std::vector<Site> build_sites(const std::vector<Complex>& values,
                              std::vector<std::string>& warnings) {
  std::vector<Site> sites;
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    const Complex v = values[i];
    if (v.imag() == 0.0) {
      sites.push_back({v, 1.0, {{v, MemberKind::Real}}});
      used[i] = true;
      continue;
    }
    // exact conjugate partner, if present
    std::size_t partner = values.size();
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j == i || used[j]) continue;
      if (values[j].real() == v.real() && values[j].imag() == -v.imag()) {
        partner = j;
        break;
      }
    }
    if (partner == values.size()) {
      warnings.push_back("eigenvalue without exact conjugate partner; symmetry is best-effort");
      sites.push_back({v, 1.0, {{v, MemberKind::FreeComplex}}});
      used[i] = true;
      continue;
    }
    const Complex upper = v.imag() > 0.0 ? v : values[partner];
    sites.push_back({upper, 2.0, {{upper, MemberKind::Pair}}});
    used[i] = used[partner] = true;
  }
  return sites;
}

void merge_sites(std::vector<Site>& sites, double threshold, bool& ambiguous) {
  while (sites.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i + 1 < sites.size(); ++i) {
      for (std::size_t j = i + 1; j < sites.size(); ++j) {
        const double d = dist(sites[i], sites[j]);
        if (d > threshold) continue;
        if (d < best) {
          second = best;
          best = d;
          bi = i;
          bj = j;
        } else if (d < second) {
          second = d;
        }
      }
    }
    if (!std::isfinite(best)) break;
    if (std::isfinite(second) && second - best <= 0.1 * threshold) ambiguous = true;

    Site merged;
    const Site& a = sites[bi];
    const Site& b = sites[bj];
    merged.weight = a.weight + b.weight;
    merged.pos = (a.pos * a.weight + b.pos * b.weight) / merged.weight;
    merged.members = a.members;
    merged.members.insert(merged.members.end(), b.members.begin(), b.members.end());
    sites.erase(sites.begin() + static_cast<std::ptrdiff_t>(bj));
    sites[bi] = std::move(merged);
  }
}

std::vector<Complex> expand_members(const Site& s) {
  std::vector<Complex> out;
  for (const auto& [v, kind] : s.members) {
    out.push_back(v);
    if (kind == MemberKind::Pair) out.push_back(std::conj(v));
  }
  return out;
}

Complex mean_of(const std::vector<Complex>& values) {
  Complex sum{};
  for (const Complex& v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

Spectrum cluster_spectrum(const std::vector<Complex>& values, std::size_t n,
                          const TolerancePolicy& policy, double scale) {
  if (values.size() != n || n == 0) {
    throw DimensionError("cluster_spectrum expects exactly n eigenvalues");
  }
  Spectrum s;
  s.n = n;
  s.policy = policy;
  s.resolved.scale = scale;
  s.resolved.zero_threshold = policy.resolved_zero(n, scale);
  s.resolved.cluster_threshold = policy.resolved_cluster(n, scale);
  s.resolved.rank_threshold = policy.resolved_rank(n, n, scale);

  auto sites = build_sites(values, s.warnings);
  merge_sites(sites, s.resolved.cluster_threshold, s.ambiguous);

  // Materialize clusters.  A site containing conjugate pairs is either one
  // conjugate-closed cluster hugging the real axis or a mirror pair of
  // clusters strictly off it.
  std::vector<EigenCluster> clusters;
  for (const Site& site : sites) {
    const bool has_pair = std::any_of(
        site.members.begin(), site.members.end(),
        [](const auto& m) { return m.second == MemberKind::Pair; });
    const bool has_single = std::any_of(
        site.members.begin(), site.members.end(),
        [](const auto& m) { return m.second != MemberKind::Pair; });
    if (!has_pair) {
      EigenCluster c;
      c.members = expand_members(site);
      c.value = mean_of(c.members);
      c.algebraic_multiplicity = static_cast<int>(c.members.size());
      clusters.push_back(std::move(c));
      continue;
    }
    if (has_single || 2.0 * site.pos.imag() <= s.resolved.cluster_threshold) {
      EigenCluster c;
      c.members = expand_members(site);
      c.value = mean_of(c.members);  // pair imaginaries cancel exactly
      c.algebraic_multiplicity = static_cast<int>(c.members.size());
      clusters.push_back(std::move(c));
      continue;
    }
    EigenCluster upper, lower;
    for (const auto& [v, kind] : site.members) {
      upper.members.push_back(v);
      lower.members.push_back(std::conj(v));
    }
    upper.value = mean_of(upper.members);
    lower.value = std::conj(upper.value);
    upper.algebraic_multiplicity = static_cast<int>(upper.members.size());
    lower.algebraic_multiplicity = upper.algebraic_multiplicity;
    clusters.push_back(std::move(upper));
    clusters.push_back(std::move(lower));
  }

  // Fold everything inside the zero threshold into a single zero cluster.
  EigenCluster zero;
  zero.is_zero = true;
  std::vector<EigenCluster> kept;
  for (auto& c : clusters) {
    if (std::abs(c.value) <= s.resolved.zero_threshold) {
      zero.members.insert(zero.members.end(), c.members.begin(), c.members.end());
      zero.algebraic_multiplicity += c.algebraic_multiplicity;
    } else {
      kept.push_back(std::move(c));
    }
  }
  if (zero.algebraic_multiplicity > 0) {
    zero.value = mean_of(zero.members);
    kept.push_back(std::move(zero));
    s.zero_multiplicity = kept.back().algebraic_multiplicity;
  }

  std::sort(kept.begin(), kept.end(), [](const EigenCluster& a, const EigenCluster& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  s.clusters = std::move(kept);

  for (const Complex& v : values) {
    const double m = std::abs(v);
    if (m >= 0.5 * s.resolved.zero_threshold && m <= 2.0 * s.resolved.zero_threshold) {
      s.fragile = true;
      s.warnings.push_back("eigenvalue magnitude within a factor of two of the zero threshold; zero/nonzero split is fragile");
      break;
    }
  }
  if (s.ambiguous) {
    s.warnings.push_back("two candidate merges fell within 10% of the clustering tolerance; partition is order-sensitive");
  }
  return s;
}

std::size_t nonzero_count(const Spectrum& s) {
  std::size_t count = 0;
  for (const auto& c : s.clusters)
    if (!c.is_zero) count += static_cast<std::size_t>(c.algebraic_multiplicity);
  return count;
}

bool nonzero_distinct(const Spectrum& s) {
  for (const auto& c : s.clusters)
    if (!c.is_zero && c.algebraic_multiplicity != 1) return false;
  return true;
}

MultiplicityTable geometric_multiplicities(const Matrix& a, const Spectrum& s) {
  a.require_square("geometric_multiplicities");
  MultiplicityTable table;
  table.records.reserve(s.clusters.size());
  for (const auto& c : s.clusters) {
    MultiplicityRecord rec;
    rec.cluster = c;
    int gm = -1;
    if (c.value.imag() < 0.0) {
      // mirror of an already-computed conjugate cluster
      for (const auto& done : table.records) {
        if (done.cluster.value == std::conj(c.value)) {
          gm = done.geometric_multiplicity;
          rec.clamped = done.clamped;
          break;
        }
      }
    }
    if (gm < 0) {
      // The zero cluster is probed at zero itself, tying its geometric
      // multiplicity to the rank-nullity of a rather than to the mean of
      // numerically splattered zeros.
      const Complex shift = c.is_zero ? Complex(0.0, 0.0) : c.value;
      gm = static_cast<int>(null_space_dim(a, shift, s.policy));
      if (gm < 1) {
        gm = 1;
        rec.clamped = true;
        table.warnings.push_back("computed nullity 0 clamped to 1 at eigenvalue of multiplicity " +
                                 std::to_string(c.algebraic_multiplicity));
      } else if (gm > c.algebraic_multiplicity) {
        gm = c.algebraic_multiplicity;
        rec.clamped = true;
        table.warnings.push_back("computed nullity exceeded algebraic multiplicity " +
                                 std::to_string(c.algebraic_multiplicity) + " and was clamped");
      }
    }
    rec.geometric_multiplicity = gm;
    table.records.push_back(std::move(rec));
  }
  return table;
}

}  // namespace diagx
