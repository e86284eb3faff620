#include "ergo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ergo {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ComplexMatrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw ValidationError(field + ": expected a non-empty array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != n)
      throw ValidationError(field + ": row " + std::to_string(i) + " must have " +
                            std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      const json& cell = row[k];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        throw ValidationError(field + "[" + std::to_string(i) + "][" + std::to_string(k) +
                              "]: expected [re, im]");
      m(i, k) = cx{cell[0].get<double>(), cell[1].get<double>()};
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k)
      row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

StateFile parse_state_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("state file: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("state file: top level must be an object");
  for (const char* key : {"d_a", "d_b", "rho", "H"})
    if (!j.contains(key)) throw ValidationError(std::string(key) + ": missing required field");
  if (!j["d_a"].is_number_unsigned() || !j["d_b"].is_number_unsigned())
    throw ValidationError("d_a/d_b: expected positive integers");

  StateFile out;
  const std::size_t d_a = j["d_a"].get<std::size_t>();
  const std::size_t d_b = j["d_b"].get<std::size_t>();
  if (d_a < 1 || d_b < 1) throw ValidationError("d_a/d_b: must be >= 1");
  if (d_a * d_b > kMaxDim) throw DimensionTooLarge("d_a*d_b: exceeds the dim <= 64 scope");

  out.state.rho = parse_matrix(j["rho"], "rho");
  out.state.d_a = d_a;
  out.state.d_b = d_b;
  if (out.state.rho.dim() != d_a * d_b)
    throw ValidationError("rho: dimension " + std::to_string(out.state.rho.dim()) +
                          " does not equal d_a*d_b");
  validate_state(out.state);

  const json& hj = j["H"];
  if (!hj.is_object() || !hj.contains("kind"))
    throw ValidationError("H.kind: missing required field");
  const std::string kind = hj["kind"].get<std::string>();
  if (kind == "non_interacting") {
    if (!hj.contains("h_a") || !hj.contains("h_b"))
      throw ValidationError("H.h_a/H.h_b: required for kind non_interacting");
    ComplexMatrix ha = parse_matrix(hj["h_a"], "H.h_a");
    ComplexMatrix hb = parse_matrix(hj["h_b"], "H.h_b");
    if (ha.dim() != d_a) throw ValidationError("H.h_a: dimension must equal d_a");
    if (hb.dim() != d_b) throw ValidationError("H.h_b: dimension must equal d_b");
    if (!is_hermitian(ha)) throw NotHermitian("H.h_a: not Hermitian");
    if (!is_hermitian(hb)) throw NotHermitian("H.h_b: not Hermitian");
    out.hamiltonian = BipartiteHamiltonian::non_interacting(std::move(ha), std::move(hb));
  } else if (kind == "general") {
    if (!hj.contains("h")) throw ValidationError("H.h: required for kind general");
    ComplexMatrix h = parse_matrix(hj["h"], "H.h");
    if (h.dim() != d_a * d_b) throw ValidationError("H.h: dimension must equal d_a*d_b");
    if (!is_hermitian(h)) throw NotHermitian("H.h: not Hermitian");
    out.hamiltonian = BipartiteHamiltonian::general(std::move(h), d_a, d_b);
  } else {
    throw ValidationError("H.kind: must be \"non_interacting\" or \"general\"");
  }
  return out;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("state file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

std::string write_state_json(const StateFile& f) {
  json j;
  j["d_a"] = f.state.d_a;
  j["d_b"] = f.state.d_b;
  j["rho"] = matrix_to_json(f.state.rho);
  json hj;
  if (f.hamiltonian.kind() == HamiltonianKind::NonInteracting) {
    hj["kind"] = "non_interacting";
    hj["h_a"] = matrix_to_json(f.hamiltonian.local_a());
    hj["h_b"] = matrix_to_json(f.hamiltonian.local_b());
  } else {
    hj["kind"] = "general";
    hj["h"] = matrix_to_json(f.hamiltonian.total());
  }
  j["H"] = hj;
  return j.dump(2) + "\n";
}

std::string report_json(const ContributionReport& rep) {
  ordered_json j;
  auto put = [&](const char* key, double v) {
    if (std::isnan(v))
      j[key] = nullptr;
    else
      j[key] = v;
  };
  j["beta"] = rep.beta;
  j["interacting"] = rep.interacting;
  put("energy", rep.energy_value);
  put("ergotropy", rep.ergotropy_value);
  put("coherence", rep.coherence);
  put("delta", rep.delta);
  put("delta_T", rep.delta_T);
  put("delta_C_eta", rep.delta_C_eta);
  put("delta_L", rep.delta_L_value);
  put("delta_prime", rep.delta_prime_value);
  if (rep.delta_E.has_value())
    j["delta_E"] = *rep.delta_E;
  else
    j["delta_E"] = nullptr;
  put("tilde_T", rep.tilde_T);
  put("tilde_D", rep.tilde_D);
  if (rep.tilde_E.has_value())
    j["tilde_E"] = *rep.tilde_E;
  else
    j["tilde_E"] = nullptr;
  put("gap_EG", rep.gap_EG);
  put("free_energy_gap", rep.free_energy_gap_value);
  put("T", rep.measures.T);
  put("D", rep.measures.D);
  put("C", rep.measures.C);
  put("D_prime", rep.measures.D_prime);
  put("L", rep.measures.L);
  put("eta_entropy", rep.eta_entropy);
  put("eta_energy_residual", rep.eta_energy_residual);
  j["eta_multistarts"] = rep.eta_multistarts;
  j["eta_origin"] = rep.eta_origin;
  put("bound_T_low", rep.bounds_T.lower);
  put("bound_T_high", rep.bounds_T.upper);
  put("bound_delta_low", rep.bounds_delta.lower);
  put("bound_delta_high", rep.bounds_delta.upper);
  put("bound_prime_low", rep.bounds_prime.lower);
  put("bound_prime_high", rep.bounds_prime.upper);
  put("decomposition_residual", rep.decomposition_residual);
  put("prime_decomp_residual", rep.prime_decomposition_residual);
  put("identity_T_residual", rep.identity_T_residual);
  put("identity_delta_residual", rep.identity_delta_residual);
  put("identity_L_residual", rep.identity_L_residual);
  put("identity_prime_residual", rep.identity_prime_residual);
  j["marginal_degenerate"] = rep.marginal_degenerate;
  j["hamiltonian_degenerate"] = rep.hamiltonian_degenerate;
  j["infinite_term"] = rep.infinite_term;
  if (rep.thermal_beta.has_value())
    j["thermal_beta"] = *rep.thermal_beta;
  else
    j["thermal_beta"] = nullptr;
  j["eta_discord_multistarts"] = rep.measures.discord_multistarts;
  return j.dump(2) + "\n";
}

std::string report_csv(const ContributionReport& rep) {
  auto cell = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
  auto opt = [&](const std::optional<double>& v) {
    return v.has_value() ? format_double(*v) : std::string();
  };
  std::string out =
      "schema_version,beta,energy,ergotropy,coherence,delta,delta_T,delta_C_eta,delta_L,"
      "delta_prime,delta_E,tilde_T,tilde_D,tilde_E,gap_EG,free_energy_gap,T,D,C,D_prime,L,"
      "eta_entropy,eta_energy_residual,eta_multistarts,eta_origin,bound_T_low,bound_T_high,"
      "bound_delta_low,bound_delta_high,bound_prime_low,bound_prime_high,decomposition_residual,"
      "prime_decomp_residual,marginal_degenerate,hamiltonian_degenerate,infinite_term\n";
  out += "1," + cell(rep.beta) + ',' + cell(rep.energy_value) + ',' +
         cell(rep.ergotropy_value) + ',' + cell(rep.coherence) + ',' + cell(rep.delta) + ',' +
         cell(rep.delta_T) + ',' + cell(rep.delta_C_eta) + ',' + cell(rep.delta_L_value) +
         ',' + cell(rep.delta_prime_value) + ',' + opt(rep.delta_E) + ',' + cell(rep.tilde_T) +
         ',' + cell(rep.tilde_D) + ',' + opt(rep.tilde_E) + ',' + cell(rep.gap_EG) + ',' +
         cell(rep.free_energy_gap_value) + ',' + cell(rep.measures.T) + ',' +
         cell(rep.measures.D) + ',' + cell(rep.measures.C) + ',' + cell(rep.measures.D_prime) +
         ',' + cell(rep.measures.L) + ',' + cell(rep.eta_entropy) + ',' +
         cell(rep.eta_energy_residual) + ',' + std::to_string(rep.eta_multistarts) + ',' +
         rep.eta_origin + ',' + cell(rep.bounds_T.lower) + ',' + cell(rep.bounds_T.upper) +
         ',' + cell(rep.bounds_delta.lower) + ',' + cell(rep.bounds_delta.upper) + ',' +
         cell(rep.bounds_prime.lower) + ',' + cell(rep.bounds_prime.upper) + ',' +
         cell(rep.decomposition_residual) + ',' + cell(rep.prime_decomposition_residual) + ',' +
         (rep.marginal_degenerate ? "1" : "0") + ',' + (rep.hamiltonian_degenerate ? "1" : "0") +
         ',' + (rep.infinite_term ? "1" : "0") + "\n";
  return out;
}

std::string error_json(const std::string& type, const std::string& message) {
  json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  return j.dump() + "\n";
}

}  // namespace ergo
