#include "soliton/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string family_word(const SystemParams& p) { return std::string(to_string(p.family())); }

const std::vector<std::string> kTrajectoryColumns = {
    "eta", "X1", "X2", "X3", "Y1", "Y2", "Y3", "W", "Q", "H", "G", "t", "f", "fdot", "conserved"};
const std::vector<std::string> kProfileColumns = {"t", "a", "b", "c", "f", "fdot"};

std::string join_csv(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i];
  }
  return out;
}

SystemParams params_from_meta(const CsvTable& t) {
  const auto fam = t.meta_value("family");
  const auto eps = t.meta_value("epsilon");
  if (!fam || !eps) throw InvalidArgument("CSV header lacks family= or epsilon=");
  int e = 0;
  try {
    e = std::stoi(*eps);
  } catch (const std::exception&) {
    throw InvalidArgument("bad epsilon in CSV header: " + *eps);
  }
  if (*fam == "octonionic") return SystemParams::octonionic(e);
  if (*fam != "quaternionic") throw InvalidArgument("unknown family in CSV header: " + *fam);
  const auto m = t.meta_value("m");
  if (!m) throw InvalidArgument("CSV header lacks m=");
  try {
    return SystemParams::quaternionic(std::stoi(*m), e);
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("bad m in CSV header: " + *m);
  }
}

double meta_double(const CsvTable& t, const std::string& key) {
  const auto v = t.meta_value(key);
  if (!v) throw InvalidArgument("CSV header lacks " + key + "=");
  char* end = nullptr;
  const double d = std::strtod(v->c_str(), &end);
  if (end == v->c_str() || *end != '\0') throw InvalidArgument("bad " + key + " in CSV header");
  return d;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

json pairs_json(const std::vector<std::pair<InvariantSet, double>>& v) {
  json j = json::object();
  for (const auto& [set, x] : v) j[std::string(to_string(set))] = num_or_null(x);
  return j;
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  static const std::vector<std::string> known = {
      "family", "m", "epsilon", "s", "delta", "gauge", "einstein", "rtol", "atol", "eta_max",
      "max_step", "sample_stride", "out_dir", "prefix", "trajectory_csv", "profile_csv",
      "report_json", "plot_svg", "strict"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw InvalidArgument("unknown config key '" + k + "'");
    }
  }
  try {
    if (j.contains("family")) c.family = family_kind_from_string(j.at("family").get<std::string>());
    c.m = get_or(j, "m", c.m);
    c.epsilon = get_or(j, "epsilon", c.epsilon);
    if (j.contains("s")) c.s = j.at("s").get<std::vector<double>>();
    c.delta = get_or(j, "delta", c.delta);
    if (j.contains("gauge")) c.gauge = gauge_from_string(j.at("gauge").get<std::string>());
    c.einstein = get_or(j, "einstein", c.einstein);
    c.integrator.rtol = get_or(j, "rtol", c.integrator.rtol);
    c.integrator.atol = get_or(j, "atol", c.integrator.atol);
    if (j.contains("eta_max")) c.integrator.eta_max = j.at("eta_max").get<double>();
    c.integrator.max_step = get_or(j, "max_step", c.integrator.max_step);
    c.integrator.sample_stride = get_or(j, "sample_stride", c.integrator.sample_stride);
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    c.prefix = get_or(j, "prefix", c.prefix);
    c.trajectory_csv = get_or(j, "trajectory_csv", c.trajectory_csv);
    c.profile_csv = get_or(j, "profile_csv", c.profile_csv);
    c.report_json = get_or(j, "report_json", c.report_json);
    c.plot_svg = get_or(j, "plot_svg", c.plot_svg);
    c.strict = get_or(j, "strict", c.strict);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  std::random_device rd;
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string csv_header_line(const SystemParams& p, double C, Gauge gauge) {
  std::string s = "# family=" + family_word(p);
  if (p.family() == Family::quaternionic) s += " m=" + std::to_string(p.m());
  s += " epsilon=" + std::to_string(p.epsilon()) + " C=" + num(C) +
       " gauge=" + std::string(to_string(gauge)) + "\n";
  return s;
}

std::string trajectory_csv(const Trajectory& tr) {
  const SystemParams& p = tr.params;
  const bool quat = p.family() == Family::quaternionic;
  double C = 0;
  if (!tr.samples.empty()) C = soliton_constant(tr);
  std::string out = csv_header_line(p, C, Gauge::raw) + join_csv(kTrajectoryColumns) + "\n";
  for (const auto& s : tr.samples) {
    const double lam = p.epsilon() == 1 ? std::sqrt(std::max(s.state.get(Var::W), 0.0)) : s.wtilde;
    const double row[] = {s.eta,
                          quat ? s.state.get(Var::X1) : 0.0,
                          s.state.get(Var::X2),
                          s.state.get(Var::X3),
                          quat ? s.state.get(Var::Y1) : 1.0,
                          s.state.get(Var::Y2),
                          s.state.get(Var::Y3),
                          s.state.get(Var::W),
                          s.scalars.Q,
                          s.scalars.H,
                          s.scalars.G,
                          s.t,
                          s.f,
                          lam > 0 ? (s.scalars.H - 1.0) / lam : 0.0,
                          conserved_quantity(p, s)};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      if (i) out += ',';
      out += num(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string profile_csv(const SolitonProfile& prof) {
  std::string out = csv_header_line(prof.params, prof.C, prof.gauge) + join_csv(kProfileColumns) + "\n";
  for (const auto& s : prof.samples) {
    out += num(s.t) + ',' + num(s.a) + ',' + num(s.b) + ',' + num(s.c) + ',' + num(s.f) + ',' +
           num(s.fdot) + '\n';
  }
  return out;
}

std::optional<std::string> CsvTable::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ws(line.substr(1));
      std::string tok;
      while (ws >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        t.meta.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
      }
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw InvalidArgument("CSV line " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " fields, expected " +
                            std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0') {
        throw InvalidArgument("CSV line " + std::to_string(lineno) + ": not a number '" + c + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw InvalidArgument("CSV has no column row");
  return t;
}

SolitonProfile profile_from_csv(const CsvTable& table) {
  SolitonProfile prof(params_from_meta(table));
  prof.C = meta_double(table, "C");
  const auto g = table.meta_value("gauge");
  prof.gauge = g ? gauge_from_string(*g) : Gauge::raw;
  std::size_t idx[6];
  for (std::size_t k = 0; k < 6; ++k) idx[k] = table.column(kProfileColumns[k]);
  for (const auto& r : table.rows) {
    prof.samples.push_back({r[idx[0]], r[idx[1]], r[idx[2]], r[idx[3]], r[idx[4]], r[idx[5]]});
    prof.eta.push_back(std::nan(""));
  }
  return prof;
}

Trajectory trajectory_from_csv(const CsvTable& table) {
  const SystemParams p = params_from_meta(table);
  Trajectory tr(p);
  const bool quat = p.family() == Family::quaternionic;
  const std::size_t ie = table.column("eta"), it = table.column("t"), iF = table.column("f"),
                    ifd = table.column("fdot");
  std::vector<std::size_t> vars;
  for (const char* name : {"X1", "X2", "X3", "Y1", "Y2", "Y3", "W"}) {
    const std::string n(name);
    if (!quat && (n == "X1" || n == "Y1")) continue;
    vars.push_back(table.column(n));
  }
  for (const auto& r : table.rows) {
    Sample s;
    s.eta = r[ie];
    std::vector<double> v;
    for (std::size_t k : vars) v.push_back(r[k]);
    s.state = PhaseState(p.family(), std::span<const double>(v));
    s.scalars = derived_scalars(p, s.state);
    s.t = r[it];
    s.f = r[iF];
    if (p.epsilon() == 0 && r[ifd] != 0) s.wtilde = (s.scalars.H - 1.0) / r[ifd];
    tr.samples.push_back(s);
  }
  return tr;
}

json to_json(const AsymptoticReport& r) {
  json j;
  j["gauge"] = r.gauge;
  j["classification"] = std::string(to_string(r.classification));
  j["base"] = std::string(to_string(r.base));
  j["mu_sq"] = num_or_null(r.mu_sq);
  j["nu_sq"] = num_or_null(r.nu_sq);
  j["nu_sq_extrapolated"] = num_or_null(r.nu_sq_extrapolated);
  if (r.snapped) {
    j["snapped"] = {{"mu_sq", r.snapped->mu_sq.str()},
                    {"nu_sq", r.snapped->nu_sq.str()},
                    {"base", std::string(to_string(r.snapped->base))},
                    {"distance", num_or_null(r.snap_distance)},
                    {"monotone_approach", r.monotone_approach}};
  } else {
    j["snapped"] = nullptr;
  }
  j["C"] = num_or_null(r.C);
  j["coefficients"] = {
      {"predicted", {{"ca", r.predicted.ca}, {"cb", r.predicted.cb}, {"cc", r.predicted.cc}}},
      {"measured", {{"ca", r.measured.ca}, {"cb", r.measured.cb}, {"cc", r.measured.cc}}},
      {"cone_slopes", r.cone_slopes},
      {"cone_variation", r.cone_variation}};
  json d;
  d["Q_final"] = num_or_null(r.Q_final);
  d["fdot_final"] = num_or_null(r.fdot_final);
  d["W_eta_final"] = num_or_null(r.W_eta_final);
  d["X_over_W_final"] = r.X_over_W_final;
  d["cigar_radius"] = num_or_null(r.cigar_radius);
  d["a_tail_cauchy"] = num_or_null(r.a_tail_cauchy);
  d["volume_exponent"] = r.volume_exponent ? json(*r.volume_exponent) : json(nullptr);
  d["y1_final"] = num_or_null(r.y1_final);
  j["diagnostics"] = d;
  j["failed_checks"] = r.failed_checks;
  j["notes"] = r.notes;
  return j;
}

json to_json(const FamilyRun& run) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["gauge"] = run.report.gauge;
  j["length_scale"] = run.profile.scale;
  j["family"] = std::string(to_string(run.family));
  j["m"] = run.params.m();
  j["n"] = run.params.n();
  j["epsilon"] = run.params.epsilon();
  j["s"] = run.spec.s;
  j["delta"] = run.spec.delta;
  j["einstein_subfamily"] = run.spec.einstein_subfamily;
  j["expected"] = {{"classification", std::string(to_string(run.expected.cls))},
                   {"base", std::string(to_string(run.expected.base))},
                   {"base_asserted", run.expected.base_asserted},
                   {"row", run.expected.row},
                   {"caveat", run.expected.caveat}};
  j["verdict"] = std::string(to_string(run.verdict));
  j["problems"] = run.problems;
  j["report"] = to_json(run.report);

  const MonitorSummary& m = run.monitors;
  json mj;
  mj["terminal_reason"] = m.terminal_reason;
  mj["eta_final"] = m.eta_final;
  mj["samples"] = m.samples;
  mj["accepted_steps"] = m.accepted_steps;
  mj["rejected_steps"] = m.rejected_steps;
  json sets = json::array();
  for (auto s : m.sets) sets.push_back(std::string(to_string(s)));
  mj["sets"] = sets;
  mj["worst_inequality_margin"] = pairs_json(m.worst_margin);
  mj["worst_equality_residual"] = pairs_json(m.worst_equality);
  json ev = json::array();
  for (const auto& e : m.events) {
    ev.push_back({{"kind", std::string(to_string(e.kind))},
                  {"eta", e.eta},
                  {"set", std::string(to_string(e.set))},
                  {"constraint", e.label},
                  {"margin", num_or_null(e.margin)}});
  }
  mj["events"] = ev;
  mj["max_q_identity_residual"] = num_or_null(m.max_q_identity_residual);
  mj["conserved_rel_spread"] = num_or_null(m.conserved_rel_spread);
  mj["y1_max_increase"] = num_or_null(m.y1_max_increase);
  mj["max_equation_residual"] = num_or_null(m.max_residual);
  mj["max_potential_residual"] = num_or_null(m.max_potential_residual);
  if (m.regularity) {
    const auto& g = *m.regularity;
    mj["regularity"] = {{"a_slope", g.a_slope},   {"b_slope", g.b_slope},
                        {"c_slope", g.c_slope},   {"c0", g.c0},
                        {"fddot0", g.fddot0},     {"fddot0_expected", g.fddot0_expected},
                        {"fddot0_rel_error", g.fddot0_rel_error}};
  }
  j["monitors"] = mj;
  if (run.sensitivity) {
    j["sensitivity"] = {{"d_mu_sq", run.sensitivity->d_mu_sq},
                        {"d_nu_sq", run.sensitivity->d_nu_sq},
                        {"d_C", run.sensitivity->d_C}};
  }
  return j;
}

json to_json(const ResidualSeries& r, bool include_series) {
  json j;
  j["max_equation"] = num_or_null(r.max_equation);
  j["max_potential"] = num_or_null(r.max_potential);
  j["points"] = r.t.size();
  if (include_series) {
    j["t"] = r.t;
    j["equations"] = r.equations;
    j["potential"] = r.potential;
  }
  return j;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::size_t dim = 0;
  for (const auto& r : rows) dim = std::max(dim, r.item.s.size());
  std::string out = "family,m,epsilon,einstein";
  for (std::size_t i = 0; i < dim; ++i) out += ",s" + std::to_string(i + 1);
  for (std::size_t i = 0; i < dim; ++i) out += ",s" + std::to_string(i + 1) + "_normalized";
  out += ",mu_sq,nu_sq,C,classification,base,expected,expected_base,verdict,problems\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.item.family)) + ',' + std::to_string(r.item.m) + ',' +
           std::to_string(r.item.epsilon) + ',' + (r.item.einstein ? "1" : "0");
    for (std::size_t i = 0; i < dim; ++i) out += ',' + (i < r.item.s.size() ? num(r.item.s[i]) : "");
    for (std::size_t i = 0; i < dim; ++i) {
      out += ',' + (i < r.s_normalized.size() ? num(r.s_normalized[i]) : "");
    }
    std::string problems = r.problems;
    std::replace(problems.begin(), problems.end(), '"', '\'');
    out += ',' + num(r.mu_sq) + ',' + num(r.nu_sq) + ',' + num(r.C) + ',' +
           std::string(to_string(r.classification)) + ',' + std::string(to_string(r.base)) + ',' +
           std::string(to_string(r.expected)) + ',' + std::string(to_string(r.expected_base)) + ',' +
           std::string(to_string(r.verdict)) + ",\"" + problems + "\"\n";
  }
  return out;
}

json sweep_summary(const std::vector<SweepRow>& rows) {
  std::size_t matches = 0, mismatch = 0, inconclusive = 0;
  for (const auto& r : rows) {
    switch (r.verdict) {
      case Verdict::matches: ++matches; break;
      case Verdict::mismatch: ++mismatch; break;
      case Verdict::inconclusive: ++inconclusive; break;
    }
  }
  return {{"schema_version", kReportSchemaVersion},
          {"rows", rows.size()},
          {"matches", matches},
          {"mismatch", mismatch},
          {"inconclusive", inconclusive},
          {"match_rate", match_rate(rows)}};
}

std::string svg_plot(const std::string& title, const std::string& xlabel,
                     const std::vector<double>& x, const std::vector<PlotSeries>& series,
                     bool log_x) {
  constexpr double W = 720, H = 440, L = 70, R = 150, T = 40, B = 50;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (log_x && !(x[i] > 0)) continue;
    x0 = std::min(x0, tx(x[i]));
    x1 = std::max(x1, tx(x[i]));
    for (const auto& s : series) {
      if (i < s.y.size() && std::isfinite(s.y[i])) {
        y0 = std::min(y0, s.y[i]);
        y1 = std::max(y1, s.y[i]);
      }
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << xml_escape(title) << "</text>\n"
    << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
    << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n"
    << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
    << xml_escape(xlabel + (log_x ? " (log10)" : "")) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
    const double X = L + (W - L - R) * k / 4, Y = H - B - (H - T - B) * k / 4;
    o << "<text x=\"" << X << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << xv
      << "</text>\n"
      << "<text x=\"" << L - 6 << "\" y=\"" << Y + 4 << "\" text-anchor=\"end\">" << yv
      << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* col = colors[k % std::size(colors)];
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < series[k].y.size(); ++i) {
      if ((log_x && !(x[i] > 0)) || !std::isfinite(series[k].y[i])) continue;
      o << px(x[i]) << ',' << py(series[k].y[i]) << ' ';
    }
    o << "\"/>\n"
      << "<text x=\"" << W - R + 12 << "\" y=\"" << T + 16 + 18 * k << "\" fill=\"" << col
      << "\">" << xml_escape(series[k].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<std::filesystem::path> write_run_artifacts(const RunConfig& c, const FamilyRun& run) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& suffix, const std::string& content) {
    const auto path = c.out_dir / (c.prefix + suffix);
    atomic_write(path, content);
    written.push_back(path);
  };
  if (c.trajectory_csv && !run.trajectory.samples.empty()) {
    put("_trajectory.csv", trajectory_csv(run.trajectory));
  }
  if (c.profile_csv && !run.profile.samples.empty()) put("_profile.csv", profile_csv(run.profile));
  if (c.report_json) put("_report.json", to_json(run).dump(2) + "\n");
  if (c.plot_svg && !run.profile.samples.empty()) {
    std::vector<double> t;
    PlotSeries a{"a", {}}, b{"b", {}}, cc{"c", {}}, f{"f", {}};
    for (const auto& s : run.profile.samples) {
      t.push_back(s.t);
      a.y.push_back(s.a);
      b.y.push_back(s.b);
      cc.y.push_back(s.c);
      f.y.push_back(s.f);
    }
    put("_metric.svg", svg_plot("metric and potential", "t", t, {a, b, cc, f}, true));
    std::vector<double> eta;
    PlotSeries nu{"Y3/Y2", {}}, y1{"Y1", {}}, q{"Q", {}};
    const bool quat = run.params.family() == Family::quaternionic;
    for (const auto& s : run.trajectory.samples) {
      eta.push_back(s.eta);
      nu.y.push_back(s.state.get(Var::Y3) / s.state.get(Var::Y2));
      y1.y.push_back(quat ? s.state.get(Var::Y1) : 1.0);
      q.y.push_back(s.scalars.Q);
    }
    put("_phase.svg", svg_plot("phase variables", "eta", eta, {nu, y1, q}, true));
  }
  return written;
}

}  // namespace soliton
