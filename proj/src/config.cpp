#include "pendcart/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace pendcart {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct Parser {
  std::string file;
  int line = 0;
  std::string section;
  std::string key;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(file, line, key, msg);
  }

  double number(const std::string& v) const {
    try {
      size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) fail("trailing characters in number '" + v + "'");
      return d;
    } catch (const std::logic_error&) {
      fail("expected a number, got '" + v + "'");
    }
  }

  bool flag(const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail("expected a boolean, got '" + v + "'");
  }

  // Bracketed literals: [a, b, c] or row-major [[a, b], [c, d]].
  std::vector<std::vector<double>> matrix(const std::string& v) const {
    std::vector<std::vector<double>> rows;
    std::vector<double> current;
    std::string num;
    int depth = 0;
    bool in_row = false;
    const auto flush_num = [&] {
      if (!num.empty()) {
        current.push_back(number(trim(num)));
        num.clear();
      }
    };
    for (char c : v) {
      if (c == '[') {
        ++depth;
        if (depth == 2) in_row = true;
        if (depth > 2) fail("matrix literal nested too deep");
      } else if (c == ']') {
        flush_num();
        if (depth == 2 || (depth == 1 && !in_row)) {
          if (!current.empty()) {
            rows.push_back(current);
            current.clear();
          }
        }
        --depth;
        if (depth < 0) fail("unbalanced ']' in matrix literal");
      } else if (c == ',') {
        if (depth == 0) fail("',' outside brackets");
        if (depth == 1 && in_row) continue;  // row separator
        flush_num();
      } else {
        num += c;
      }
    }
    if (depth != 0) fail("unbalanced matrix literal");
    if (!rows.empty()) {
      const size_t w = rows.front().size();
      for (const auto& r : rows) {
        if (r.size() != w) fail("ragged matrix literal");
      }
    }
    return rows;
  }
};

}  // namespace

ConfigError::ConfigError(const std::string& file_, int line_,
                         const std::string& field_, const std::string& message)
    : std::runtime_error(file_ + ":" + std::to_string(line_) + ": " + message +
                         (field_.empty() ? "" : " (field '" + field_ + "')")),
      file(file_),
      line(line_),
      field(field_) {}

RunConfig::RunConfig() { G_d = DiscreteGains::preset_paper_sec3().G_d; }

DiscreteGains RunConfig::resolve_discrete() const {
  DiscreteGains dg;
  dg.tau = scenario.tau;
  const Discretization d = discretize(linearize(plant), dg.tau);
  dg.A_d = d.A_d;
  dg.B_d = d.B_d;
  dg.C << 1, 0, 0, 0, 0, 1, 0, 0;
  dg.G_d = observer_poles.empty()
               ? G_d
               : place_observer_gain(dg.A_d, dg.C, dg.tau, observer_poles);
  return dg;
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

void apply_preset(RunConfig& cfg, const std::string& name) {
  Scenario& sc = cfg.scenario;
  if (name == "paper-2000") {
    cfg.design = DesignParams::preset_paper_2000();
    return;
  }
  if (name == "paper-sec3") {
    cfg.G_d = DiscreteGains::preset_paper_sec3(cfg.plant).G_d;
    cfg.observer_poles.clear();
    sc.tau = 0.0143;
    return;
  }
  const struct {
    const char* name;
    Controller controller;
    Mode mode;
    double theta0;
  } table[] = {
      {"fig2", Controller::linear, Mode::continuous_full_state, 0.4},
      {"fig3", Controller::matching, Mode::continuous_full_state, 0.4},
      {"fig4", Controller::linear, Mode::continuous_full_state, 1.1},
      {"fig5", Controller::matching, Mode::continuous_full_state, 1.1},
      {"fig6", Controller::linear, Mode::sampled_observer, 0.4},
      {"fig7", Controller::matching, Mode::sampled_observer, 0.4},
  };
  for (const auto& row : table) {
    if (name == row.name) {
      sc.controller = row.controller;
      sc.mode = row.mode;
      sc.initial = State{row.theta0, 0.0, 0.0, 0.0};
      sc.x_hat_initial.reset();
      sc.tau = 0.0143;
      cfg.preset = name;
      return;
    }
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

RunConfig parse_config(std::istream& in, const std::string& filename) {
  RunConfig cfg;
  Parser p;
  p.file = filename;
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') p.fail("malformed section header");
      p.section = trim(line.substr(1, line.size() - 2));
      p.key.clear();
      const std::vector<std::string> known = {"plant", "design", "discrete",
                                              "scenario", "output"};
      if (std::find(known.begin(), known.end(), p.section) == known.end()) {
        p.fail("unknown section [" + p.section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) p.fail("expected key = value");
    p.key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (p.key.empty()) p.fail("empty key");
    if (value.empty()) p.fail("empty value");

    DesignParams& d = cfg.design;
    Scenario& sc = cfg.scenario;
    if (p.section == "plant") {
      if (p.key == "b") {
        cfg.plant.b = p.number(value);
        d.b = cfg.plant.b;
      } else {
        p.fail("unknown key '" + p.key + "' in [plant]");
      }
    } else if (p.section == "design") {
      if (p.key == "preset") {
        if (value != "paper-2000") p.fail("unknown design preset '" + value + "'");
        const bool sym = d.symmetric_y_regions;
        const bool local = d.region_local_dissipation;
        d = DesignParams::preset_paper_2000();
        d.b = cfg.plant.b;
        d.symmetric_y_regions = sym;
        d.region_local_dissipation = local;
      } else if (p.key == "theta_L") {
        d.theta_L = p.number(value);
      } else if (p.key == "y_L") {
        d.y_L = p.number(value);
      } else if (p.key == "sigma0") {
        d.sigma0 = p.number(value);
      } else if (p.key == "sigma_inf") {
        d.sigma_inf = p.number(value);
      } else if (p.key == "mu0") {
        d.mu0 = p.number(value);
      } else if (p.key == "mu_inf") {
        d.mu_inf = p.number(value);
      } else if (p.key == "w0") {
        d.w0 = p.number(value);
      } else if (p.key == "w_inf") {
        d.w_inf = p.number(value);
      } else if (p.key == "phi0") {
        d.phi0 = p.number(value);
      } else if (p.key == "phi_inf") {
        d.phi_inf = p.number(value);
      } else if (p.key == "h0") {
        d.h0 = p.number(value);
      } else if (p.key == "h_inf") {
        d.h_inf = p.number(value);
      } else if (p.key == "switch_regions") {
        if (value == "symmetric") {
          d.symmetric_y_regions = true;
        } else if (value == "as_printed") {
          d.symmetric_y_regions = false;
        } else {
          p.fail("switch_regions must be 'symmetric' or 'as_printed'");
        }
      } else if (p.key == "dissipation_constants") {
        if (value == "region_local") {
          d.region_local_dissipation = true;
        } else if (value == "global") {
          d.region_local_dissipation = false;
        } else {
          p.fail("dissipation_constants must be 'region_local' or 'global'");
        }
      } else {
        p.fail("unknown key '" + p.key + "' in [design]");
      }
    } else if (p.section == "discrete") {
      if (p.key == "preset") {
        if (value != "paper-sec3") {
          p.fail("unknown discrete preset '" + value + "'");
        }
        cfg.G_d = DiscreteGains::preset_paper_sec3(cfg.plant).G_d;
        cfg.observer_poles.clear();
      } else if (p.key == "G_d") {
        const auto rows = p.matrix(value);
        if (rows.size() != 4 || rows.front().size() != 2) {
          p.fail("G_d must be a 4x2 matrix literal");
        }
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 2; ++j) cfg.G_d(i, j) = rows[i][j];
        }
        cfg.observer_poles.clear();
      } else if (p.key == "observer_poles") {
        // Continuous poles, real and imaginary parts column-paired:
        // [[re, im], ...]; plain [a, b, c, d] means real poles.
        const auto rows = p.matrix(value);
        cfg.observer_poles.clear();
        if (rows.size() == 1 && rows.front().size() == 4) {
          for (double re : rows.front()) cfg.observer_poles.emplace_back(re, 0.0);
        } else if (rows.size() == 4 && rows.front().size() == 2) {
          for (const auto& r : rows) cfg.observer_poles.emplace_back(r[0], r[1]);
        } else {
          p.fail("observer_poles must be [a,b,c,d] or [[re,im] x4]");
        }
      } else if (p.key == "tau") {
        sc.tau = p.number(value);
      } else {
        p.fail("unknown key '" + p.key + "' in [discrete]");
      }
    } else if (p.section == "scenario") {
      if (p.key == "preset") {
        try {
          apply_preset(cfg, value);
        } catch (const std::invalid_argument& e) {
          p.fail(e.what());
        }
      } else if (p.key == "controller") {
        if (value == "matching") {
          sc.controller = Controller::matching;
        } else if (value == "linear") {
          sc.controller = Controller::linear;
        } else {
          p.fail("controller must be 'matching' or 'linear'");
        }
      } else if (p.key == "mode") {
        if (value == "continuous-full-state" || value == "continuous") {
          sc.mode = Mode::continuous_full_state;
        } else if (value == "sampled-observer" || value == "sampled") {
          sc.mode = Mode::sampled_observer;
        } else {
          p.fail("mode must be 'continuous-full-state' or 'sampled-observer'");
        }
      } else if (p.key == "theta0") {
        sc.initial.theta = p.number(value);
      } else if (p.key == "x0") {
        sc.initial.x = p.number(value);
      } else if (p.key == "theta_dot0") {
        sc.initial.theta_dot = p.number(value);
      } else if (p.key == "x_dot0") {
        sc.initial.x_dot = p.number(value);
      } else if (p.key == "x_hat0") {
        const auto rows = p.matrix(value);
        if (rows.size() != 1 || rows.front().size() != 4) {
          p.fail("x_hat0 must be a 4-vector literal");
        }
        const auto& r = rows.front();
        sc.x_hat_initial = State{r[0], r[1], r[2], r[3]};
      } else if (p.key == "horizon") {
        sc.horizon = p.number(value);
        if (sc.horizon <= 0) p.fail("horizon must be positive");
      } else if (p.key == "dt") {
        sc.dt = p.number(value);
        if (sc.dt <= 0) p.fail("dt must be positive");
      } else if (p.key == "tau") {
        sc.tau = p.number(value);
        if (sc.tau <= 0) p.fail("tau must be positive");
      } else if (p.key == "divergence_bound") {
        sc.divergence_bound = p.number(value);
        if (sc.divergence_bound <= 0) p.fail("divergence_bound must be positive");
      } else {
        p.fail("unknown key '" + p.key + "' in [scenario]");
      }
    } else if (p.section == "output") {
      if (p.key == "path") {
        cfg.out_path = value;
      } else {
        p.fail("unknown key '" + p.key + "' in [output]");
      }
    } else {
      p.fail("key outside any [section]");
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  return parse_config(in, path);
}

}  // namespace pendcart
