#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mgefst/monoid.hpp"

namespace mgefst {

/// A certificate <u, v, s> that two words behave alike: for every
/// sampled suffix z, f(alpha z) = u . s(z) and f(beta z) = v . s(z).
/// `samples` is the finitely-sampled map from suffixes to s-values.
struct WitnessTriple {
  Element u;
  Element v;
  std::map<std::string, Element> samples;
};

/// Process-wide tallies of witness checks. Every producer of a
/// WitnessTriple runs it through check_witness below, so `violations`
/// stays zero unless a defining equation ever fails.
struct WitnessAudit {
  std::uint64_t validated = 0;
  std::uint64_t violations = 0;
};

WitnessAudit witness_audit_snapshot();
void witness_audit_reset();

using QueryFn = std::function<std::optional<Element>(std::string_view)>;

/// Re-derives both defining equations of `w` for every sampled suffix
/// against the function f. Returns true and bumps the audit counter on
/// success; records a violation and returns false otherwise.
bool verify_witness(const WitnessTriple& w, const QueryFn& f,
                    std::string_view alpha, std::string_view beta);

/// Like verify_witness but throws WitnessViolationError on failure.
/// All in-library producers call this before handing a triple out.
void check_witness(const WitnessTriple& w, const QueryFn& f,
                   std::string_view alpha, std::string_view beta);

}  // namespace mgefst
