#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "diagx/diagnostics.hpp"
#include "diagx/generate.hpp"
#include "diagx/iotable.hpp"
#include "diagx/simulate.hpp"
#include "diagx/tolerance.hpp"

namespace diagx {

/// Ordered so reports serialize with stable, diff-friendly key order.
using Json = nlohmann::ordered_json;

/// Lowercase-hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Provenance record for one input file.
struct InputDigest {
  std::string path;
  std::string sha256;
};

InputDigest digest_file(const std::string& path);

/// Payload builders.  The human renderer and --json both consume these, so
/// the two output modes can never disagree about the evidence.
Json to_json(const Threshold& t);
Json to_json(const TolerancePolicy& p);
Json to_json(const ResolvedPolicy& r);
Json to_json(Complex v);
Json to_json(const ClusterEvidence& c);
Json to_json(const Evidence& e);
Json to_json(const Verdict& v);
Json to_json(const BoundReport& b);
Json to_json(const TableReport& t);
Json to_json(const Mode& m);
Json to_json(const SimulationResult& s);
Json to_json(const Fixture& f, const FixtureSpec& spec);

/// Machine-readable report wrapper, schema "dx-report/1": every command
/// emits {schema, command, inputs, policy, payload, warnings}.
struct ReportEnvelope {
  std::string command;
  std::vector<InputDigest> inputs;
  Json policy;  // object, or null for commands without tolerance knobs
  Json payload;
  std::vector<std::string> warnings;

  Json build() const;
};

}  // namespace diagx
