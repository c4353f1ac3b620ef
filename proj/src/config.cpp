// Copyright 2026 The su3twa Authors
// SPDX-License-Identifier: Apache-2.0

#include "su3twa/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "su3twa/error.hpp"

namespace su3twa {

namespace {

enum class Section { Any, Model, Init, Run };

struct KeyInfo {
  std::string_view name;
  Section section;
};

constexpr KeyInfo kKeys[] = {
    {"experiment", Section::Run},      {"n_traj", Section::Run},
    {"seed", Section::Run},            {"dt", Section::Run},
    {"t_final", Section::Run},         {"records", Section::Run},
    {"output", Section::Run},          {"threads", Section::Run},
    {"convergence_tol", Section::Run}, {"exact", Section::Run},
    {"representation", Section::Model}, {"lattice", Section::Model},
    {"M", Section::Model},             {"L", Section::Model},
    {"J", Section::Model},             {"jz_over_u", Section::Model},
    {"jnz_over_u", Section::Model},    {"U", Section::Model},
    {"mu", Section::Model},            {"Bx", Section::Model},
    {"By", Section::Model},            {"Bz", Section::Model},
    {"observables", Section::Model},   {"state", Section::Init},
    {"rho_row1", Section::Init},       {"rho_row2", Section::Init},
    {"rho_row3", Section::Init},
};

const char* section_name(Section s) {
  switch (s) {
    case Section::Model: return "model";
    case Section::Init: return "init";
    case Section::Run: return "run";
    case Section::Any: break;
  }
  return "";
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.size() - start
                                                                    : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void config_error(std::string_view key, const std::string& msg) {
  fail(ErrorCode::Config, "key '" + std::string(key) + "': " + msg);
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    config_error(key, "cannot parse '" + std::string(v) + "' as a number");
  if (!std::isfinite(out)) config_error(key, "value must be finite");
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    config_error(key, "cannot parse '" + std::string(v) + "' as a non-negative integer");
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  config_error(key, "expected true or false, got '" + std::string(v) + "'");
}

std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void set_row(RunConfig& cfg, std::string_view key, std::size_t row, std::string_view v) {
  const auto w = words(v);
  if (w.size() != 6)
    config_error(key, "expected 6 numbers (re im re im re im), got " + std::to_string(w.size()));
  if (!cfg.density) cfg.density = Matrix3c::Zero();
  for (std::size_t c = 0; c < 3; ++c)
    (*cfg.density)(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) = {
        parse_double(key, w[2 * c]), parse_double(key, w[2 * c + 1])};
}

void apply(RunConfig& cfg, std::string_view key, std::string_view v) {
  if (key == "experiment") {
    const auto e = experiment_from_string(v);
    if (!e) config_error(key, "unknown experiment '" + std::string(v) + "'");
    cfg.experiment = *e;
  } else if (key == "n_traj") {
    const auto n = parse_uint(key, v);
    if (n < 1) config_error(key, "must be >= 1");
    cfg.n_traj = n;
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, v);
  } else if (key == "dt") {
    const double dt = parse_double(key, v);
    if (!(dt > 0.0)) config_error(key, "must be positive");
    cfg.dt = dt;
  } else if (key == "t_final") {
    const double t = parse_double(key, v);
    if (!(t > 0.0)) config_error(key, "must be positive");
    cfg.t_final = t;
  } else if (key == "records") {
    const auto n = parse_uint(key, v);
    if (n < 2) config_error(key, "must be >= 2");
    cfg.records = n;
  } else if (key == "output") {
    cfg.output = std::string(v);
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_uint(key, v));
  } else if (key == "convergence_tol") {
    const double t = parse_double(key, v);
    if (!(t > 0.0)) config_error(key, "must be positive");
    cfg.convergence_tol = t;
  } else if (key == "exact") {
    cfg.exact = parse_bool(key, v);
  } else if (key == "representation") {
    cfg.representations.clear();
    for (auto item : split(v, ',')) {
      if (item == "su3") cfg.representations.push_back(Representation::SU3);
      else if (item == "su2") cfg.representations.push_back(Representation::SU2);
      else config_error(key, "unknown representation '" + std::string(item) + "'");
    }
  } else if (key == "lattice") {
    if (v == "single") cfg.lattice = Lattice::Single;
    else if (v == "fully_connected") cfg.lattice = Lattice::FullyConnected;
    else if (v == "cubic") cfg.lattice = Lattice::Cubic;
    else config_error(key, "unknown lattice '" + std::string(v) + "'");
  } else if (key == "M") {
    const auto n = parse_uint(key, v);
    if (n < 1) config_error(key, "must be >= 1");
    cfg.sites = n;
  } else if (key == "L") {
    const auto n = parse_uint(key, v);
    if (n < 2) config_error(key, "must be >= 2");
    cfg.side = n;
  } else if (key == "J") {
    cfg.coupling = parse_double(key, v);
  } else if (key == "jz_over_u") {
    cfg.jz_over_u = parse_double(key, v);
  } else if (key == "jnz_over_u") {
    cfg.jnz_over_u = parse_double(key, v);
  } else if (key == "U") {
    cfg.interaction = parse_double(key, v);
  } else if (key == "mu") {
    cfg.chemical_potential = parse_double(key, v);
  } else if (key == "Bx") {
    cfg.field[0] = parse_double(key, v);
  } else if (key == "By") {
    cfg.field[1] = parse_double(key, v);
  } else if (key == "Bz") {
    cfg.field[2] = parse_double(key, v);
  } else if (key == "observables") {
    cfg.observables.clear();
    for (auto item : split(v, ',')) {
      const auto k = observable_from_string(item);
      if (!k) config_error(key, "unknown observable '" + std::string(item) + "'");
      cfg.observables.push_back(*k);
    }
  } else if (key == "state") {
    if (v == "sx_plus_one") cfg.state = NamedState::SxPlusOne;
    else if (v == "sz_zero") cfg.state = NamedState::SzZero;
    else if (v == "matrix") cfg.state.reset();
    else config_error(key, "unknown state '" + std::string(v) + "'");
  } else if (key == "rho_row1") {
    set_row(cfg, key, 0, v);
  } else if (key == "rho_row2") {
    set_row(cfg, key, 1, v);
  } else if (key == "rho_row3") {
    set_row(cfg, key, 2, v);
  } else {
    fail(ErrorCode::Config, "unknown key '" + std::string(key) + "'");
  }
}

const KeyInfo* find_key(std::string_view key) {
  for (const auto& k : kKeys)
    if (k.name == key) return &k;
  return nullptr;
}

}  // namespace

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::ValidateAlgebra: return "validate-algebra";
    case Experiment::SingleSpin: return "single-spin";
    case Experiment::FullyConnected: return "fully-connected";
    case Experiment::BoseHubbard: return "bose-hubbard";
    case Experiment::Custom: return "custom";
  }
  return "?";
}

const char* to_string(Lattice l) {
  switch (l) {
    case Lattice::Single: return "single";
    case Lattice::FullyConnected: return "fully_connected";
    case Lattice::Cubic: return "cubic";
  }
  return "?";
}

std::optional<Experiment> experiment_from_string(std::string_view s) {
  for (auto e : {Experiment::ValidateAlgebra, Experiment::SingleSpin,
                 Experiment::FullyConnected, Experiment::BoseHubbard, Experiment::Custom})
    if (s == to_string(e)) return e;
  return std::nullopt;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  Section section = Section::Any;
  bool saw_experiment = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      if (line.front() == '[') {
        if (line.back() != ']') fail(ErrorCode::Config, "malformed section header");
        const auto name = trim(line.substr(1, line.size() - 2));
        if (name == "model") section = Section::Model;
        else if (name == "init") section = Section::Init;
        else if (name == "run") section = Section::Run;
        else fail(ErrorCode::Config, "unknown section '" + std::string(name) + "'");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(ErrorCode::Config, "expected 'key = value'");
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      const KeyInfo* info = find_key(key);
      if (!info) fail(ErrorCode::Config, "unknown key '" + std::string(key) + "'");
      if (section != Section::Any && info->section != section)
        fail(ErrorCode::Config, "key '" + std::string(key) + "' belongs in [" +
                                    section_name(info->section) + "], not [" +
                                    section_name(section) + "]");
      if (value.empty()) config_error(key, "missing value");
      apply(cfg, key, value);
      if (key == "experiment") saw_experiment = true;
    } catch (const Error& e) {
      fail(ErrorCode::Config, where + e.what());
    }
  }
  if (!saw_experiment) fail(ErrorCode::Config, "missing key 'experiment'");
  validate_config(cfg);
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  const int couplings = cfg.coupling.has_value() + cfg.jz_over_u.has_value() +
                        cfg.jnz_over_u.has_value();
  if (couplings > 1)
    fail(ErrorCode::Config, "set at most one of J, jz_over_u, jnz_over_u");
  if (cfg.state && cfg.density)
    fail(ErrorCode::Config, "set either a named state or rho_row1..3, not both");
  if (cfg.density) {
    try {
      validate_density(*cfg.density);
    } catch (const Error& e) {
      fail(ErrorCode::Config, std::string("rho_row1..3: ") + e.what());
    }
  }
  switch (cfg.experiment) {
    case Experiment::FullyConnected:
      if (!cfg.sites) fail(ErrorCode::Config, "missing key 'M' for fully-connected");
      if (couplings == 0)
        fail(ErrorCode::Config, "missing key 'J' or 'jz_over_u' for fully-connected");
      break;
    case Experiment::BoseHubbard:
      if (couplings == 0)
        fail(ErrorCode::Config, "missing key 'jnz_over_u' or 'J' for bose-hubbard");
      break;
    case Experiment::Custom:
      if (!cfg.lattice) fail(ErrorCode::Config, "missing key 'lattice' for custom");
      if (*cfg.lattice == Lattice::FullyConnected && !cfg.sites)
        fail(ErrorCode::Config, "missing key 'M' for a fully connected lattice");
      break;
    default:
      break;
  }
}


void set_config_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (!find_key(key)) fail(ErrorCode::Config, "unknown key '" + std::string(key) + "'");
  apply(cfg, key, trim(value));
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[run]\n";
  os << "experiment = " << to_string(cfg.experiment) << "\n";
  if (cfg.n_traj) os << "n_traj = " << *cfg.n_traj << "\n";
  os << "seed = " << cfg.seed << "\n";
  if (cfg.dt) os << "dt = " << fmt(*cfg.dt) << "\n";
  if (cfg.t_final) os << "t_final = " << fmt(*cfg.t_final) << "\n";
  os << "records = " << cfg.records << "\n";
  if (!cfg.output.empty()) os << "output = " << cfg.output << "\n";
  os << "threads = " << cfg.threads << "\n";
  os << "convergence_tol = " << fmt(cfg.convergence_tol) << "\n";
  if (cfg.exact) os << "exact = " << (*cfg.exact ? "true" : "false") << "\n";

  os << "\n[model]\n";
  if (!cfg.representations.empty()) {
    os << "representation = ";
    for (std::size_t i = 0; i < cfg.representations.size(); ++i)
      os << (i ? "," : "") << to_string(cfg.representations[i]);
    os << "\n";
  }
  if (cfg.lattice) os << "lattice = " << to_string(*cfg.lattice) << "\n";
  if (cfg.sites) os << "M = " << *cfg.sites << "\n";
  if (cfg.side) os << "L = " << *cfg.side << "\n";
  if (cfg.coupling) os << "J = " << fmt(*cfg.coupling) << "\n";
  if (cfg.jz_over_u) os << "jz_over_u = " << fmt(*cfg.jz_over_u) << "\n";
  if (cfg.jnz_over_u) os << "jnz_over_u = " << fmt(*cfg.jnz_over_u) << "\n";
  os << "U = " << fmt(cfg.interaction) << "\n";
  os << "mu = " << fmt(cfg.chemical_potential) << "\n";
  os << "Bx = " << fmt(cfg.field[0]) << "\n";
  os << "By = " << fmt(cfg.field[1]) << "\n";
  os << "Bz = " << fmt(cfg.field[2]) << "\n";
  if (!cfg.observables.empty()) {
    os << "observables = ";
    for (std::size_t i = 0; i < cfg.observables.size(); ++i)
      os << (i ? "," : "") << to_string(cfg.observables[i]);
    os << "\n";
  }

  os << "\n[init]\n";
  if (cfg.state) os << "state = " << to_string(*cfg.state) << "\n";
  if (cfg.density) {
    for (Eigen::Index r = 0; r < 3; ++r) {
      os << "rho_row" << r + 1 << " =";
      for (Eigen::Index c = 0; c < 3; ++c)
        os << " " << fmt((*cfg.density)(r, c).real()) << " "
           << fmt((*cfg.density)(r, c).imag());
      os << "\n";
    }
  }
  return os.str();
}

RunConfig config_from_csv(std::string_view csv) {
  constexpr std::string_view kPrefix = "# config: ";
  std::string text;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const auto nl = csv.find('\n', pos);
    const auto line = csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? csv.size() : nl + 1;
    if (line.substr(0, kPrefix.size()) == kPrefix) {
      text.append(line.substr(kPrefix.size()));
      text.push_back('\n');
    }
  }
  if (text.empty()) fail(ErrorCode::Config, "no embedded config found in CSV");
  return parse_config(text);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Config, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace su3twa
