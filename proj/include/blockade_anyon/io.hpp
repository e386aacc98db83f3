#pragma once

// Serialization: canonical JSON (sorted keys, 15 significant digits), CSV tables, the
// coordinate-list operator format, and JSON views of every report type.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "leakage.hpp"
#include "version.hpp"
#include "spectra.hpp"
#include "topo_symmetry.hpp"

namespace blockade_anyon {

using json = nlohmann::json;

namespace detail {

inline std::string format_double(double v, int digits) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

inline void write_canonical(std::ostream& os, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) os << ',';
        first = false;
        os << json(it.key()).dump() << ':';
        write_canonical(os, it.value());
      }
      os << '}';
      break;
    }
    case json::value_t::array: {
      os << '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ',';
        write_canonical(os, j[k]);
      }
      os << ']';
      break;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>(), 15);
      break;
    default:
      os << j.dump();
  }
}

}  // namespace detail

inline std::string canonical_json(const json& j) {
  std::ostringstream os;
  detail::write_canonical(os, j);
  return os.str();
}

// Shortest decimal that parses back to the same double.
inline std::string exact_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// CSV with a header row, '.' decimals and LF line endings.
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& columns) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      const double v = columns[c][r];
      out += (v == std::floor(v) && std::abs(v) < 1e15) ? std::to_string(static_cast<long long>(v))
                                                        : detail::format_double(v, 15);
    }
    out += '\n';
  }
  return out;
}

// ---- sectors and operators ---------------------------------------------------------

inline json to_json(const Sector& s) {
  return {{"N", s.anyons()}, {"z0", to_string(s.z0())}, {"zN", to_string(s.zn())}, {"dim", s.dim()}};
}

inline BoundaryLabel label_from_json(const json& j) {
  const auto text = j.get<std::string>();
  if (text == "1") return BoundaryLabel::One;
  if (text == "tau") return BoundaryLabel::Tau;
  throw ArgumentError("unknown boundary label '" + text + "'");
}

// States are regenerated, never stored.
inline SectorPtr sector_from_json(const json& j) {
  auto s = Sector::make(j.at("N").get<int>(), label_from_json(j.at("z0")), label_from_json(j.at("zN")));
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != s->dim())
    throw DomainError("sector dimension in file does not match the regenerated basis");
  return s;
}

// First line: JSON header {sector, hermitian, nnz, ...extra}; then one `row col value`
// line per stored entry in canonical order. Values use shortest round-trip decimals.
inline std::string export_operator(const SparseOperator& op, const json& extra = json::object()) {
  json header = extra;
  header["sector"] = to_json(*op.sector());
  header["hermitian"] = op.hermitian();
  header["nnz"] = op.nnz();
  std::string out = canonical_json(header) + '\n';
  op.for_each([&](std::size_t r, std::size_t c, double v) {
    out += std::to_string(r) + ' ' + std::to_string(c) + ' ' + exact_double(v) + '\n';
  });
  return out;
}

struct ImportedOperator {
  SparseOperator op;
  json header;
};

inline ImportedOperator import_operator(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("operator file is empty");
  ImportedOperator result;
  result.header = json::parse(line);
  const auto sector = sector_from_json(result.header.at("sector"));
  const auto nnz = result.header.at("nnz").get<std::size_t>();
  std::vector<Triplet> t;
  t.reserve(nnz);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string r, c, v;
    fields >> r >> c >> v;
    Triplet e{};
    double value = 0.0;
    if (std::from_chars(r.data(), r.data() + r.size(), e.row).ec != std::errc{} ||
        std::from_chars(c.data(), c.data() + c.size(), e.col).ec != std::errc{} ||
        std::from_chars(v.data(), v.data() + v.size(), value).ec != std::errc{}) {
      throw ArgumentError("malformed operator line: " + line);
    }
    e.value = value;
    t.push_back(e);
  }
  if (t.size() != nnz) throw ArgumentError("operator file declares nnz " + std::to_string(nnz) +
                                           " but has " + std::to_string(t.size()) + " entries");
  result.op = SparseOperator::from_triplets(sector, std::move(t));
  return result;
}

// ---- reports ---------------------------------------------------------------------------

inline json to_json(const SymmetryReport& r) {
  return {{"op", r.op_id}, {"sector", r.sector}, {"commutator_norm", r.commutator_norm},
          {"tolerance", r.tolerance}, {"is_symmetric", r.is_symmetric}};
}

inline json to_json(const SymmetricCountReport& r) {
  return {{"N", r.anyons}, {"n_op", r.n_op}, {"total", r.total}, {"numerical_rank", r.numerical_rank},
          {"rank_tolerance", r.rank_tolerance}, {"verified", r.verified}};
}

inline json to_json(const SupportReport& r) {
  json j = {{"op", r.op_id}, {"window", json::array({r.a, r.b})}, {"full", r.full},
            {"context_independent", r.context_independent}};
  j["action_window"] = r.action_window ? json::array({r.action_window->first, r.action_window->second}) : json();
  return j;
}

inline json to_json(const DictionaryReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"term", t.name}, {"expected", t.expected},
                     {"recovered", t.recovered ? json(*t.recovered) : json()}});
  }
  json j = {{"sector", r.sector}, {"site", r.site}, {"kind", r.kind == RydbergKind::SigmaZ ? "sigma_z" : "sigma_x"},
            {"terms", terms}, {"additive_constant", r.additive_constant}, {"residual", r.residual},
            {"residual_tolerance", kDictionaryTolerance},
            {"coefficients_identifiable", r.coefficients_identifiable},
            {"max_relative_error", r.max_relative_error}};
  j["symmetry"] = r.symmetry ? to_json(*r.symmetry) : json();
  return j;
}

inline json to_json(const Spectrum& s) {
  return {{"sector", s.sector}, {"eigenvalues", s.eigenvalues}, {"complete", s.complete},
          {"max_residual", s.max_residual}};
}

inline json to_json(const MultisetMatch& m) {
  return {{"passed", m.passed}, {"worst_residual", m.worst_residual}, {"worst_index", m.worst_index}};
}

inline json to_json(const DirectSumReport& r) {
  return {{"N", r.anyons}, {"couplings", r.couplings}, {"tolerance", r.tolerance},
          {"spectrum_tt", to_json(r.tau_tau)}, {"spectrum_11", to_json(r.one_one)},
          {"spectrum_1t", to_json(r.one_tau)}, {"match", to_json(r.match)}, {"passed", r.passed}};
}

inline json to_json(const MirrorReport& r) {
  return {{"N", r.anyons}, {"couplings", r.couplings}, {"tolerance", r.tolerance},
          {"convention", r.convention}, {"mirrored", to_json(r.mirrored)},
          {"identical", to_json(r.identical)}, {"passed", r.passed}};
}

inline json to_json(const NoiseConfig& n) {
  return {{"eps_x", n.eps_x}, {"eps_z", n.eps_z}, {"master_seed", n.master_seed},
          {"distribution", "uniform[-eps,eps], independent per site"}};
}

inline json to_json(const LeakageTrace& t) {
  return {{"N", t.anyons}, {"couplings", t.couplings}, {"noise", to_json(t.noise)},
          {"noise_draw", {{"flip", t.draw.flip}, {"occupation", t.draw.occupation}}},
          {"initial_state", {{"channel", to_string(t.initial.channel)},
                             {"style", t.initial.style == InitialStyle::ProjectorEigenbasis ? "projector_eigenbasis"
                                                                                             : "projected_basis_state"},
                             {"basis_index", t.initial.basis_index}}},
          {"max_deviation", t.max_deviation}, {"mean_deviation", t.mean_deviation},
          {"points", t.times.size()}};
}

inline std::string leakage_csv(const LeakageTrace& t) {
  return csv_table({"t", "charge_expectation", "norm_drift"}, {t.times, t.charge_expectation, t.norm_drift});
}

inline std::string spectrum_csv(const Spectrum& s) {
  std::vector<double> index(s.eigenvalues.size());
  for (std::size_t k = 0; k < index.size(); ++k) index[k] = static_cast<double>(k);
  return csv_table({"index", "eigenvalue"}, {index, s.eigenvalues});
}

// ---- run manifests ---------------------------------------------------------------------

struct RunManifest {
  std::string command;
  json parameters = json::object();
  std::uint64_t master_seed = 0;
  std::string version = BLOCKADE_ANYON_VERSION_STRING;
  json tolerances = json::object();
  bool passed = true;
  std::string summary;
  double wall_clock_seconds = 0.0;  // written to timing.json, not to the manifest
};

inline json to_json(const RunManifest& m) {
  return {{"command", m.command}, {"parameters", m.parameters}, {"master_seed", m.master_seed},
          {"version", m.version}, {"tolerances", m.tolerances}, {"passed", m.passed},
          {"summary", m.summary}};
}

// Writes manifest.json (plus payload.json or the given CSV tables) into dir. The manifest
// and payload are deterministic; timing goes to a separate timing.json.
inline std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir, const RunManifest& manifest,
                                                       const json& payload,
                                                       const std::vector<std::pair<std::string, std::string>>& csv_files = {}) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    write_text_file(dir / name, content);
    written.push_back(dir / name);
  };
  emit("manifest.json", canonical_json(to_json(manifest)) + '\n');
  if (!payload.is_null() && !(payload.is_object() && payload.empty()))
    emit("payload.json", canonical_json(payload) + '\n');
  for (const auto& [name, content] : csv_files) emit(name, content);
  emit("timing.json", canonical_json({{"wall_clock_seconds", manifest.wall_clock_seconds}}) + '\n');
  return written;
}

}  // namespace blockade_anyon
