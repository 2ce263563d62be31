#include "diagx/report.hpp"

#include <array>
#include <cstdint>
#include <cstring>

#include "diagx/csv.hpp"
#include "diagx/errors.hpp"

namespace diagx {

namespace {

// Compact SHA-256 (FIPS 180-4).  Only needed for input provenance, so a
// straightforward single-buffer implementation is plenty.
constexpr std::array<std::uint32_t, 64> kRounds = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

std::uint32_t rotr(std::uint32_t x, int k) { return (x >> k) | (x << (32 - k)); }

void sha256_block(std::array<std::uint32_t, 8>& h, const unsigned char* p) {
  std::array<std::uint32_t, 64> w{};
  for (int i = 0; i < 16; ++i) {
    w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
           (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
  }
  for (int i = 16; i < 64; ++i) {
    const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  auto [a, b, c, d, e, f, g, hh] = h;
  for (int i = 0; i < 64; ++i) {
    const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
    const std::uint32_t ch = (e & f) ^ (~e & g);
    const std::uint32_t t1 = hh + s1 + ch + kRounds[i] + w[i];
    const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
    const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    const std::uint32_t t2 = s0 + maj;
    hh = g; g = f; f = e; e = d + t1;
    d = c; c = b; b = a; a = t1 + t2;
  }
  h[0] += a; h[1] += b; h[2] += c; h[3] += d;
  h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
}

const char* kind_name(FixtureKind k) {
  switch (k) {
    case FixtureKind::Jordan: return "jordan";
    case FixtureKind::Diagonalizable: return "diagonalizable";
    case FixtureKind::RankProfile: return "rank-profile";
  }
  return "?";
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  std::size_t at = 0;
  for (; at + 64 <= bytes.size(); at += 64) sha256_block(h, data + at);

  std::array<unsigned char, 128> tail{};
  const std::size_t rest = bytes.size() - at;
  std::memcpy(tail.data(), data + at, rest);
  tail[rest] = 0x80;
  const std::size_t pad = rest < 56 ? 64 : 128;
  const std::uint64_t bits = std::uint64_t(bytes.size()) * 8;
  for (int i = 0; i < 8; ++i) tail[pad - 1 - i] = static_cast<unsigned char>(bits >> (8 * i));
  sha256_block(h, tail.data());
  if (pad == 128) sha256_block(h, tail.data() + 64);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint32_t word : h) {
    for (int shift = 28; shift >= 0; shift -= 4) out.push_back(hex[(word >> shift) & 0xF]);
  }
  return out;
}

InputDigest digest_file(const std::string& path) {
  return {path, sha256_hex(read_text_file(path))};
}

Json to_json(const Threshold& t) {
  return Json{{"kind", t.kind == Threshold::Kind::Relative ? "relative" : "absolute"},
              {"value", t.value}};
}

Json to_json(const TolerancePolicy& p) {
  return Json{{"zero", to_json(p.zero)},
              {"cluster", to_json(p.cluster)},
              {"rank", to_json(p.rank)}};
}

Json to_json(const ResolvedPolicy& r) {
  return Json{{"zero_threshold", r.zero_threshold},
              {"cluster_threshold", r.cluster_threshold},
              {"rank_threshold", r.rank_threshold},
              {"scale", r.scale}};
}

Json to_json(Complex v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

Json to_json(const ClusterEvidence& c) {
  Json j{{"value", to_json(c.value)},
         {"algebraic_multiplicity", c.algebraic_multiplicity},
         {"geometric_multiplicity", nullptr},
         {"is_zero", c.is_zero}};
  if (c.geometric_multiplicity) j["geometric_multiplicity"] = *c.geometric_multiplicity;
  return j;
}

Json to_json(const Evidence& e) {
  Json clusters = Json::array();
  for (const auto& c : e.clusters) clusters.push_back(to_json(c));
  return Json{{"n", e.n},
              {"rank", e.rank},
              {"nullity", e.nullity},
              {"nonzero_count", e.nonzero_count},
              {"zero_multiplicity", e.zero_multiplicity},
              {"nonzero_distinct", e.nonzero_distinct},
              {"clusters", clusters},
              {"thresholds", to_json(e.resolved)},
              {"warnings", e.warnings}};
}

Json to_json(const Verdict& v) {
  return Json{{"outcome", to_string(v.outcome)},
              {"reason", to_string(v.reason)},
              {"evidence", to_json(v.evidence)}};
}

Json to_json(const BoundReport& b) {
  return Json{{"n", b.n},
              {"zero_multiplicity", b.zero_multiplicity},
              {"rank", b.rank},
              {"bound", b.bound},
              {"holds", b.holds},
              {"exact", b.exact},
              {"warnings", b.warnings}};
}

Json to_json(const TableReport& t) {
  return Json{{"dimension_original", t.dimension_original},
              {"dimension", t.dimension},
              {"sectors", t.sectors},
              {"pruned", t.pruned},
              {"rank", t.rank},
              {"nonzero_count", t.nonzero_count},
              {"nonzero_distinct", t.nonzero_distinct},
              {"verdict", to_json(t.verdict)},
              {"warnings", t.warnings}};
}

Json to_json(const Mode& m) {
  Json j{{"eigenvalue", to_json(m.eigenvalue)},
         {"magnitude", m.magnitude},
         {"coefficient_magnitude", m.coefficient_magnitude},
         {"half_life_steps", nullptr}};
  if (m.half_life_steps) j["half_life_steps"] = *m.half_life_steps;
  return j;
}

Json to_json(const SimulationResult& s) {
  Json modes = Json::array();
  for (const auto& m : s.modes) modes.push_back(to_json(m));
  Json j{{"sectors", s.sectors},
         {"spectral_radius", s.spectral_radius},
         {"modal_summary_available", s.modal_summary_available},
         {"modes", modes},
         {"trajectory", s.trajectory},
         {"warnings", s.warnings}};
  if (s.basis) {
    j["basis_residual"] = s.basis->residual;
    j["eigenvector_det_magnitude"] = s.basis->eigenvector_det_magnitude;
  }
  return j;
}

Json to_json(const Fixture& f, const FixtureSpec& spec) {
  Json blocks = Json::array();
  for (const auto& b : f.blocks) {
    blocks.push_back(Json{{"eigenvalue", b.eigenvalue}, {"size", b.size}});
  }
  Json values = Json::array();
  for (Complex v : f.eigenvalue_list) values.push_back(to_json(v));
  return Json{{"kind", kind_name(spec.kind)},
              {"n", spec.n},
              {"seed", spec.seed},
              {"rank", f.true_rank},
              {"nonzero_count", f.true_nonzero},
              {"zero_multiplicity", f.zero_multiplicity},
              {"expected_verdict", to_string(f.expected)},
              {"eigenvalues", values},
              {"jordan_blocks", blocks},
              {"similarity_condition", f.similarity_condition},
              {"recommended_tolerance",
               Json{{"zero_abs", f.recommended_zero_tolerance},
                    {"cluster_abs", f.recommended_cluster_tolerance}}}};
}

Json ReportEnvelope::build() const {
  Json in = Json::array();
  for (const auto& d : inputs) in.push_back(Json{{"path", d.path}, {"sha256", d.sha256}});
  return Json{{"schema", "dx-report/1"},
              {"command", command},
              {"inputs", in},
              {"policy", policy.is_null() ? Json(nullptr) : policy},
              {"payload", payload},
              {"warnings", warnings}};
}

}  // namespace diagx
