#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "weber_orr/error.hpp"
#include "weber_orr/heat.hpp"
#include "weber_orr/transform.hpp"

namespace weber_orr::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr long kMaxGridCount = 1000000;

struct RunConfig {
  std::string command;
  double k = 0.0;
  int offset = 0;
  double r0 = 1.0;
  std::string f = "bump:2,3";
  std::string lambda_grid;
  std::string r_grid;
  std::string time_grid = "log:0.01,1,3";
  std::string input;
  std::string out = "-";
  std::string format;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  int accel_terms = 12;
  std::string bc;
  std::string method = "spectral";
};

Json to_json(const RunConfig& c) {
  Json j;
  j["schema"] = 1;
  j["command"] = c.command;
  j["k"] = c.k;
  j["offset"] = c.offset;
  j["r0"] = c.r0;
  j["f"] = c.f;
  j["lambda_grid"] = c.lambda_grid;
  j["r_grid"] = c.r_grid;
  j["time_grid"] = c.time_grid;
  j["input"] = c.input;
  j["out"] = c.out;
  j["format"] = c.format;
  j["abs_tol"] = c.abs_tol;
  j["rel_tol"] = c.rel_tol;
  j["max_subdivisions"] = c.max_subdivisions;
  j["accel_terms"] = c.accel_terms;
  j["bc"] = c.bc;
  j["method"] = c.method;
  return j;
}

template <class T>
void read_field(const Json& j, const char* name, T& field) {
  if (!j.contains(name)) return;
  try {
    field = j.at(name).get<T>();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("config field '") + name + "': " + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw DomainError("config file must hold a JSON object");
  RunConfig c;
  read_field(j, "command", c.command);
  read_field(j, "k", c.k);
  read_field(j, "offset", c.offset);
  read_field(j, "r0", c.r0);
  read_field(j, "f", c.f);
  read_field(j, "lambda_grid", c.lambda_grid);
  read_field(j, "r_grid", c.r_grid);
  read_field(j, "time_grid", c.time_grid);
  read_field(j, "input", c.input);
  read_field(j, "out", c.out);
  read_field(j, "format", c.format);
  read_field(j, "abs_tol", c.abs_tol);
  read_field(j, "rel_tol", c.rel_tol);
  read_field(j, "max_subdivisions", c.max_subdivisions);
  read_field(j, "accel_terms", c.accel_terms);
  read_field(j, "bc", c.bc);
  read_field(j, "method", c.method);
  return c;
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number_or_null(x));
  return a;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  void write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << num(columns[c][r]);
      out << '\n';
    }
  }
};

struct Report {
  Table table;
  Json json;
};

QuadratureConfig quadrature(const RunConfig& c) {
  QuadratureConfig q;
  q.abs_tol = c.abs_tol;
  q.rel_tol = c.rel_tol;
  q.max_subdivisions = c.max_subdivisions;
  q.accel_terms = c.accel_terms;
  q.validate();
  return q;
}

TransformParams params(const RunConfig& c) { return TransformParams(c.k, offset_from_int(c.offset), c.r0); }

Json params_json(const RunConfig& c) {
  Json j;
  j["k"] = c.k;
  j["offset"] = c.offset;
  j["r0"] = c.r0;
  return j;
}

std::string default_r_grid(const RunConfig& c) { return "lin:" + num(c.r0) + "," + num(c.r0 + 5) + ",101"; }

std::vector<double> r_grid(const RunConfig& c) {
  const std::vector<double> r = parse_grid(c.r_grid.empty() ? default_r_grid(c) : c.r_grid);
  for (double x : r)
    if (x < c.r0) throw DomainError("radius grid must not start below r0");
  return r;
}

std::vector<std::vector<double>> read_csv_columns(const std::string& path, std::size_t want) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file '" + path + "'");
  std::vector<std::vector<double>> cols(want);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    std::vector<double> row;
    bool numeric = cells.size() >= want;
    for (std::size_t i = 0; numeric && i < want; ++i) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cells[i], &used));
        numeric = used == cells[i].size();
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw DomainError("malformed row in '" + path + "': " + line);
    }
    first = false;
    for (std::size_t i = 0; i < want; ++i) cols[i].push_back(row[i]);
  }
  return cols;
}

double l2_trapezoid(const std::vector<double>& r, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    s += 0.5 * (r[i + 1] - r[i]) * (v[i] * v[i] * r[i] + v[i + 1] * v[i + 1] * r[i + 1]);
  return std::sqrt(s);
}

Json projection_json(const KernelProjection& p) {
  Json j;
  j["present"] = p.present;
  j["coefficient"] = p.coefficient;
  j["weight"] = p.weight;
  j["exponent"] = p.exponent;
  return j;
}

Report cmd_forward(const RunConfig& c) {
  const auto f = parse_function_spec(c.f);
  const auto lambdas = parse_grid(c.lambda_grid.empty() ? "log:0.1,100,200" : c.lambda_grid);
  const SpectralFunction g = forward_grid(f, params(c), lambdas, quadrature(c));
  Report r;
  r.table = {{"lambda", "value"}, {g.nodes, g.values}};
  r.json["lambda"] = array(g.nodes);
  r.json["value"] = array(g.values);
  return r;
}

Report cmd_inverse(const RunConfig& c) {
  if (c.input.empty()) throw DomainError("inverse needs --input with lambda,value rows");
  auto cols = read_csv_columns(c.input, 2);
  const TransformParams p = params(c);
  const SpectralFunction g = spectral_from_samples(p, std::move(cols[0]), std::move(cols[1]));
  const auto r = r_grid(c);
  const auto values = inverse_grid(g, p, r, quadrature(c));
  Report out;
  out.table = {{"r", "value"}, {r, values}};
  out.json["r"] = array(r);
  out.json["value"] = array(values);
  out.json["tail_b1"] = g.tail_model.b1;
  return out;
}

Report cmd_roundtrip(const RunConfig& c) {
  const auto f = parse_function_spec(c.f);
  const auto r = r_grid(c);
  const Reconstruction rec = reconstruct(f, params(c), r, quadrature(c));
  std::vector<double> fv(r.size()), corr(r.size()), diff(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    fv[i] = f(r[i]);
    corr[i] = rec.projection.term(r[i]);
    diff[i] = rec.values[i] - fv[i];
  }
  // The Dirichlet inverse vanishes at r0 whatever f(r0) is; a single point carries no L2 mass.
  if (offset_from_int(c.offset) == Offset::zero)
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] == c.r0) diff[i] = 0.0;
  const double err = l2_trapezoid(r, diff) / std::max(l2_trapezoid(r, fv), 1e-300);
  Report out;
  out.table = {{"r", "f", "reconstructed", "uncorrected", "correction"}, {r, fv, rec.values, rec.uncorrected, corr}};
  out.json["r"] = array(r);
  out.json["f"] = array(fv);
  out.json["reconstructed"] = array(rec.values);
  out.json["uncorrected"] = array(rec.uncorrected);
  out.json["kernel"] = projection_json(rec.projection);
  out.json["relative_l2_error"] = number_or_null(err);
  return out;
}

Report cmd_plancherel(const RunConfig& c) {
  const auto f = parse_function_spec(c.f);
  const PlancherelReport rep = plancherel_report(f, params(c), quadrature(c));
  const BesselInequality ineq = bessel_inequality_check(rep);
  const double rel = rep.norm_f_sq > 0 ? rep.residual / rep.norm_f_sq : 0.0;
  Report out;
  out.table = {{"norm_f_sq", "norm_transform_sq", "kernel_term", "residual", "relative_residual"},
               {{rep.norm_f_sq}, {rep.norm_transform_sq}, {rep.kernel_term}, {rep.residual}, {rel}}};
  out.json["norm_f_sq"] = rep.norm_f_sq;
  out.json["norm_transform_sq"] = rep.norm_transform_sq;
  out.json["kernel_term"] = rep.kernel_term;
  out.json["residual"] = rep.residual;
  out.json["relative_residual"] = rel;
  out.json["kernel"] = projection_json(rep.projection);
  out.json["bessel_inequality"] = {{"passed", ineq.passed}, {"margin", ineq.margin}};
  return out;
}

Report cmd_kernel_check(const RunConfig& c) {
  const TransformParams p = params(c);
  if (!kernel_present(p))
    throw DomainError("W_{k,l} has no power-law kernel for these parameters (needs offset -1 with k > 1 or offset 1 with k < -1)");
  const double exponent = p.offset == Offset::minus_one ? -c.k : c.k;
  const auto f = make_power(exponent);
  const std::vector<double> lambdas = c.lambda_grid.empty() ? std::vector<double>{0.3, 1.0, 3.0, 10.0} : parse_grid(c.lambda_grid);
  const QuadratureConfig q = quadrature(c);
  std::vector<double> values;
  double max_abs = 0.0;
  for (double l : lambdas) {
    values.push_back(forward_at(f, p, l, q));
    max_abs = std::max(max_abs, std::fabs(values.back()));
  }
  const double bound = 1e-7 * std::pow(c.r0, 1 - std::fabs(c.k));
  Report out;
  out.table = {{"lambda", "value"}, {lambdas, values}};
  out.json["function"] = f.name();
  out.json["lambda"] = array(lambdas);
  out.json["value"] = array(values);
  out.json["max_abs"] = max_abs;
  out.json["bound"] = bound;
  out.json["passed"] = max_abs <= bound;
  return out;
}

Report cmd_decay(const RunConfig& c) {
  const auto f = parse_function_spec(c.f);
  const auto lambdas = parse_grid(c.lambda_grid.empty() ? "log:10,500,400" : c.lambda_grid);
  const SpectralFunction g = forward_grid(f, params(c), lambdas, quadrature(c));
  const DecayReport d = decay_report(g);
  Report out;
  out.table = {{"octave_start", "max_abs", "sup_scaled"}, {d.octave_start, d.octave_max, d.octave_sup_scaled}};
  out.json["sup_scaled"] = d.sup_scaled;
  out.json["slope"] = d.slope;
  Json oct = Json::array();
  for (std::size_t i = 0; i < d.octave_start.size(); ++i)
    oct.push_back({{"start", d.octave_start[i]}, {"max_abs", d.octave_max[i]}, {"sup_scaled", d.octave_sup_scaled[i]}});
  out.json["octaves"] = oct;
  return out;
}

BoundaryCondition resolve_bc(const RunConfig& c) {
  const Offset offset = offset_from_int(c.offset);
  if (c.bc.empty()) {
    if (offset == Offset::zero) return BoundaryCondition::dirichlet;
    return offset == Offset::minus_one ? BoundaryCondition::robin_plus : BoundaryCondition::robin_minus;
  }
  const BoundaryCondition bc = boundary_from_string(c.bc);
  if (c.offset != 0 && offset_for(bc) != offset)
    throw DomainError("--bc " + c.bc + " contradicts --offset " + std::to_string(c.offset));
  return bc;
}

std::vector<double> interpolate(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& at) {
  std::vector<double> out;
  for (double a : at) {
    if (a >= x.back()) {
      out.push_back(a == x.back() ? y.back() : 0.0);
      continue;
    }
    const auto it = std::upper_bound(x.begin(), x.end(), a);
    const std::size_t i = std::max<std::size_t>(1, it - x.begin());
    const double t = (a - x[i - 1]) / (x[i] - x[i - 1]);
    out.push_back((1 - t) * y[i - 1] + t * y[i]);
  }
  return out;
}

Report cmd_heat(const RunConfig& c) {
  const auto f = parse_function_spec(c.f);
  const HeatProblem problem{c.k, c.r0, resolve_bc(c)};
  const auto times = parse_grid(c.time_grid);
  const auto r = r_grid(c);
  HeatSolution s;
  if (c.method == "spectral") {
    s = evolve_spectral(f, problem, times, r, quadrature(c));
  } else if (c.method == "fd") {
    const HeatSolution fd = evolve_fd(f, problem, times);
    s.times = fd.times;
    s.r_grid = r;
    s.method = fd.method;
    for (const auto& row : fd.values) s.values.push_back(interpolate(fd.r_grid, row, r));
  } else {
    throw DomainError("--method must be spectral or fd");
  }
  Report out;
  std::vector<double> tc, rc, vc;
  for (std::size_t t = 0; t < s.times.size(); ++t)
    for (std::size_t i = 0; i < r.size(); ++i) {
      tc.push_back(s.times[t]);
      rc.push_back(r[i]);
      vc.push_back(s.values[t][i]);
    }
  out.table = {{"t", "r", "value"}, {tc, rc, vc}};
  out.json["bc"] = to_string(problem.bc);
  out.json["method"] = c.method;
  out.json["t"] = array(s.times);
  out.json["r"] = array(r);
  Json rows = Json::array();
  for (const auto& row : s.values) rows.push_back(array(row));
  out.json["values"] = rows;
  return out;
}

std::string default_format(const std::string& command) {
  if (command == "plancherel" || command == "kernel-check" || command == "decay") return "json";
  return "csv";
}

Report dispatch(const RunConfig& c) {
  if (c.command == "forward") return cmd_forward(c);
  if (c.command == "inverse") return cmd_inverse(c);
  if (c.command == "roundtrip") return cmd_roundtrip(c);
  if (c.command == "plancherel") return cmd_plancherel(c);
  if (c.command == "kernel-check") return cmd_kernel_check(c);
  if (c.command == "decay") return cmd_decay(c);
  if (c.command == "heat") return cmd_heat(c);
  throw DomainError("unknown command '" + c.command + "'");
}

void emit(const RunConfig& c, const Report& report, std::ostream& stream) {
  std::ofstream file;
  std::ostream* out = &stream;
  if (c.out != "-" && !c.out.empty()) {
    file.open(c.out, std::ios::binary);
    if (!file) throw DomainError("cannot write output file '" + c.out + "'");
    out = &file;
  }
  const std::string format = c.format.empty() ? default_format(c.command) : c.format;
  if (format == "csv") {
    report.table.write_csv(*out);
  } else {
    Json j;
    j["schema"] = 1;
    j["command"] = c.command;
    j["params"] = params_json(c);
    if (c.command != "inverse" && c.command != "kernel-check") j["f"] = c.f;
    for (const auto& [key, value] : report.json.items()) j[key] = value;
    *out << j.dump(2) << '\n';
  }
  out->flush();
}

struct Binding {
  CLI::Option* option;
  std::function<void(RunConfig&)> apply;
};

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("grid spec must look like log:a,b,n or lin:a,b,n (got '" + spec + "')");
  const std::string kind = spec.substr(0, colon);
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw DomainError("grid spec needs three values a,b,n (got '" + spec + "')");
  double a = 0.0, b = 0.0;
  long n = 0;
  try {
    std::size_t u1 = 0, u2 = 0, u3 = 0;
    a = std::stod(parts[0], &u1);
    b = std::stod(parts[1], &u2);
    n = std::stol(parts[2], &u3);
    if (u1 != parts[0].size() || u2 != parts[1].size() || u3 != parts[2].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw DomainError("malformed grid spec '" + spec + "'");
  }
  if (n < 1 || n > kMaxGridCount) throw DomainError("grid count must be between 1 and 1000000");
  if (!std::isfinite(a) || !std::isfinite(b) || b < a) throw DomainError("grid needs finite a <= b");
  std::vector<double> out;
  if (kind == "lin") {
    for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : (i == n - 1 ? b : a + (b - a) * i / (n - 1)));
  } else if (kind == "log") {
    if (!(a > 0)) throw DomainError("log grid needs a > 0");
    const double la = std::log(a), lb = std::log(b);
    for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : (i == n - 1 ? b : (i == 0 ? a : std::exp(la + (lb - la) * i / (n - 1)))));
  } else {
    throw DomainError("grid kind must be lin or log (got '" + kind + "')");
  }
  if (n > 1 && b == a) throw DomainError("grid with several points needs a < b");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weber-Orr transforms on [r0, inf) and the exterior radial heat equation"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  bool dump = false;
  std::vector<Binding> bindings;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"forward", "forward transform on a lambda grid"},
      {"inverse", "inverse transform of lambda,value samples on an r grid"},
      {"roundtrip", "forward then inverse (with kernel correction) on an r grid"},
      {"plancherel", "Plancherel(-Parseval) balance and Bessel-type inequality"},
      {"kernel-check", "transform of the kernel element r^-k (or r^k) on probe lambdas"},
      {"decay", "sqrt(lambda)-scaled decay of the transform per octave"},
      {"heat", "radial heat equation by the spectral method or Crank-Nicolson"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    subs.push_back(sub);
    auto bind = [&](CLI::Option* opt, std::function<void(RunConfig&)> apply) { bindings.push_back({opt, std::move(apply)}); };
    bind(sub->add_option("--k", flags.k, "Bessel order k"), [&](RunConfig& c) { c.k = flags.k; });
    bind(sub->add_option("--offset", flags.offset, "kernel offset l - k (-1, 0, 1)"), [&](RunConfig& c) { c.offset = flags.offset; });
    bind(sub->add_option("--r0", flags.r0, "inner radius"), [&](RunConfig& c) { c.r0 = flags.r0; });
    bind(sub->add_option("--f", flags.f, "function: bump:a,b | power:e | exp:alpha,shift | zero"), [&](RunConfig& c) { c.f = flags.f; });
    bind(sub->add_option("--lambda-grid", flags.lambda_grid, "lambda grid: log:a,b,n | lin:a,b,n"), [&](RunConfig& c) { c.lambda_grid = flags.lambda_grid; });
    bind(sub->add_option("--r-grid", flags.r_grid, "radius grid: lin:a,b,n | log:a,b,n"), [&](RunConfig& c) { c.r_grid = flags.r_grid; });
    bind(sub->add_option("--time-grid", flags.time_grid, "time grid: lin:a,b,n | log:a,b,n"), [&](RunConfig& c) { c.time_grid = flags.time_grid; });
    bind(sub->add_option("--input", flags.input, "CSV with lambda,value rows"), [&](RunConfig& c) { c.input = flags.input; });
    bind(sub->add_option("--out", flags.out, "output file (- for stdout)"), [&](RunConfig& c) { c.out = flags.out; });
    bind(sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"})), [&](RunConfig& c) { c.format = flags.format; });
    bind(sub->add_option("--abs-tol", flags.abs_tol, "absolute quadrature tolerance"), [&](RunConfig& c) { c.abs_tol = flags.abs_tol; });
    bind(sub->add_option("--rel-tol", flags.rel_tol, "relative quadrature tolerance"), [&](RunConfig& c) { c.rel_tol = flags.rel_tol; });
    bind(sub->add_option("--max-subdivisions", flags.max_subdivisions, "adaptive subdivision limit"), [&](RunConfig& c) { c.max_subdivisions = flags.max_subdivisions; });
    bind(sub->add_option("--accel-terms", flags.accel_terms, "partial sums fed to tail acceleration"), [&](RunConfig& c) { c.accel_terms = flags.accel_terms; });
    bind(sub->add_option("--bc", flags.bc, "heat boundary: dirichlet | robin_plus | robin_minus"), [&](RunConfig& c) { c.bc = flags.bc; });
    bind(sub->add_option("--method", flags.method, "heat solver: spectral | fd"), [&](RunConfig& c) { c.method = flags.method; });
    sub->add_option("--config", config_path, "JSON run configuration; flags override it");
    sub->add_flag("--dump-config", dump, "print the resolved configuration as JSON and exit");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto selected = app.get_subcommands();
    out << (selected.empty() ? app.help() : selected.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    const std::string command = app.get_subcommands().front()->get_name();
    if (!cfg.command.empty() && cfg.command != command)
      throw DomainError("config file is for command '" + cfg.command + "', not '" + command + "'");
    cfg.command = command;
    for (const auto& b : bindings)
      if (b.option->count() > 0) b.apply(cfg);

    if (dump) {
      RunConfig shown = cfg;
      if (shown.format.empty()) shown.format = default_format(command);
      out << to_json(shown).dump(2) << '\n';
      return 0;
    }
    emit(cfg, dispatch(cfg), out);
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace weber_orr::cli
