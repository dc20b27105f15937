#include "mgefst/witness.hpp"

#include <atomic>

namespace mgefst {

namespace {
std::atomic<std::uint64_t> g_validated{0};
std::atomic<std::uint64_t> g_violations{0};
}  // namespace

WitnessAudit witness_audit_snapshot() {
  return {g_validated.load(), g_violations.load()};
}

void witness_audit_reset() {
  g_validated = 0;
  g_violations = 0;
}

bool verify_witness(const WitnessTriple& w, const QueryFn& f,
                    std::string_view alpha, std::string_view beta) {
  for (const auto& [z, s] : w.samples) {
    auto fa = f(std::string(alpha) + z);
    auto fb = f(std::string(beta) + z);
    if (!fa || !fb || *fa != op(w.u, s) || *fb != op(w.v, s)) {
      g_violations.fetch_add(1);
      return false;
    }
  }
  g_validated.fetch_add(1);
  return true;
}

void check_witness(const WitnessTriple& w, const QueryFn& f,
                   std::string_view alpha, std::string_view beta) {
  if (!verify_witness(w, f, alpha, beta)) {
    throw WitnessViolationError("witness equations failed for alpha='" +
                                std::string(alpha) + "' beta='" +
                                std::string(beta) + "'");
  }
}

}  // namespace mgefst
