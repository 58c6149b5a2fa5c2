// Copyright 2026 The chancap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chancap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "chancap/rng.hpp"

namespace chancap {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

KrausChannel build_named(const std::string& name,
                         const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double fallback,
                 bool required = false) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (required) {
      throw std::invalid_argument("channel spec: missing parameter '" + key +
                                  "' for '" + name + "'");
    }
    return fallback;
  };
  auto get_d = [&] {
    const double d = get("d", 2.0);
    if (d != std::floor(d) || d < 1) {
      throw std::invalid_argument("channel spec: d must be a positive integer");
    }
    return static_cast<int>(d);
  };
  for (const auto& [key, value] : params) {
    (void)value;
    const bool known =
        key == "d" || (name == "erasure" && key == "eps") ||
        (name == "depolarizing" && key == "lam") ||
        (name == "dephasing" && key == "gamma");
    if (!known) {
      throw std::invalid_argument("channel spec: unknown parameter '" + key +
                                  "' for '" + name + "'");
    }
  }
  if (name == "erasure") return erasure(get_d(), get("eps", 0.0, true));
  if (name == "depolarizing") return depolarizing(get_d(), get("lam", 0.0, true));
  if (name == "dephasing") return dephasing(get("gamma", 0.0, true));
  if (name == "identity") return identity_channel(get_d());
  throw std::invalid_argument("channel spec: unknown built-in '" + name + "'");
}

ChannelDescription from_json_value(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("channel JSON: top level must be an object");
  }
  if (j.contains("name")) {
    ChannelDescription desc{j.at("name").get<std::string>(), {},
                            identity_channel(1)};
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "name") continue;
      if (!it.value().is_number()) {
        throw std::invalid_argument("channel JSON: parameter '" + it.key() +
                                    "' must be a number");
      }
      desc.params[it.key()] = it.value().get<double>();
    }
    desc.channel = build_named(desc.name, desc.params);
    return desc;
  }
  if (!j.contains("din") || !j.contains("dout") || !j.contains("kraus")) {
    throw std::invalid_argument(
        "channel JSON: expected either {name, ...} or {din, dout, kraus}");
  }
  const int din = j.at("din").get<int>();
  const int dout = j.at("dout").get<int>();
  std::vector<Matrix> kraus;
  for (const json& jk : j.at("kraus")) {
    Matrix k(dout, din);
    if (static_cast<int>(jk.size()) != dout) {
      throw std::invalid_argument("channel JSON: Kraus row count must equal dout");
    }
    for (int r = 0; r < dout; ++r) {
      const json& row = jk.at(r);
      if (static_cast<int>(row.size()) != din) {
        throw std::invalid_argument("channel JSON: Kraus column count must equal din");
      }
      for (int c = 0; c < din; ++c) {
        const json& cell = row.at(c);
        if (!cell.is_array() || cell.size() != 2) {
          throw std::invalid_argument(
              "channel JSON: entries must be [re, im] pairs");
        }
        k(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
      }
    }
    kraus.push_back(std::move(k));
  }
  return ChannelDescription{"custom", {}, KrausChannel(din, dout, std::move(kraus))};
}

ChannelDescription from_text(const std::string& text) {
  const auto colon = text.find(':');
  ChannelDescription desc{trim(colon == std::string::npos ? text
                                                          : text.substr(0, colon)),
                          {},
                          identity_channel(1)};
  if (colon != std::string::npos) {
    std::stringstream body(text.substr(colon + 1));
    std::string item;
    while (std::getline(body, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("channel spec: expected key=value, got '" +
                                    item + "'");
      }
      const std::string key = trim(item.substr(0, eq));
      const std::string value = trim(item.substr(eq + 1));
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        desc.params[key] = v;
      } catch (...) {
        throw std::invalid_argument("channel spec: parameter '" + key +
                                    "' has non-numeric value '" + value + "'");
      }
    }
  }
  desc.channel = build_named(desc.name, desc.params);
  return desc;
}

std::string atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) {
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, target);
  return path;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    atomic_write(out_path, content);
  }
}

// Reference line for the scan sidecar: the constrained-capacity closed form
// where one is known for the channel, NaN otherwise.
std::function<double(double)> reference_line(const ChannelDescription& desc) {
  if (desc.name == "depolarizing" && desc.channel.din() == 2) {
    const DepolarizingClosedForms forms =
        depolarizing_closed_forms(desc.params.at("lam"));
    return [forms](double q) { return forms.chi_star(q); };
  }
  if (desc.name == "erasure" || desc.name == "identity") {
    const int d = desc.channel.din();
    const double eps = desc.name == "erasure" ? desc.params.at("eps") : 0.0;
    return [eps, d](double q) { return qec_closed_forms(eps, d, 0.0).c_e *
                                       (1.0 - q / (2.0 * std::log2(d))); };
  }
  return [](double) { return std::numeric_limits<double>::quiet_NaN(); };
}

struct CommandOutput {
  int exit_code = 0;
  std::string main_content;
  std::string sidecar_content;  // scan CSV only
};

CommandOutput run_capcurve(const RunConfig& config) {
  const ChannelDescription desc = describe_channel(config.channel_spec);
  if (desc.name != "erasure") {
    throw std::invalid_argument(
        "capcurve: the constrained curve is defined for erasure channels; got '" +
        desc.name + "'");
  }
  const double eps = desc.params.at("eps");
  const int d = desc.channel.din();
  const std::vector<double> grid = parse_grid(config.grid);

  CommandOutput out;
  json rows = json::array();
  std::string csv = "y,chi_l_i_closed,chi_l_i_optimized,c1,c_e\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid[i];
    const QecClosedForms forms = qec_closed_forms(eps, d, y);
    double optimized = std::numeric_limits<double>::quiet_NaN();
    if (d == 2) {
      const KrausChannel enc_op = identity_channel(d);
      const StateObjective objective = [&](const BipartiteState& rho) {
        return qec_chi_integrand(eps, d, enc_op, rho);
      };
      ConstraintSpec cons;
      cons.clauses.push_back({ConstraintQuantity::kMutualInformation,
                              Comparator::kEqual, y, 0.02});
      const CapacityResult res = optimize_constrained(
          objective, StateFamily::kBellDiagonal, cons, config.budget,
          Rng::derive(config.seed, static_cast<std::uint64_t>(i)));
      if (res.feasible) {
        optimized = res.value;
      } else {
        out.exit_code = 3;
      }
    }
    csv += fmt12(y) + "," + fmt12(forms.chi_l_i) + "," + fmt12(optimized) + "," +
           fmt12(forms.c1) + "," + fmt12(forms.c_e) + "\n";
    rows.push_back({{"y", y},
                    {"chi_l_i_closed", forms.chi_l_i},
                    {"chi_l_i_optimized", optimized},
                    {"c1", forms.c1},
                    {"c_e", forms.c_e}});
  }
  out.main_content =
      config.format == OutputFormat::kCsv ? csv : rows.dump(2) + "\n";
  return out;
}

CommandOutput run_scan(const RunConfig& config) {
  const ChannelDescription desc = describe_channel(config.channel_spec);
  const std::vector<ScanRecord> records =
      mc_scan(desc.channel, StateFamily::kTenParam, config.n, config.seed);
  const std::vector<ScanBin> bins =
      bin_scan(records, config.bin_width, reference_line(desc));

  CommandOutput out;
  if (config.format == OutputFormat::kCsv) {
    std::string csv = "q,f\n";
    for (const ScanRecord& r : records) {
      csv += fmt12(r.q) + "," + fmt12(r.f) + "\n";
    }
    std::string side = "q_bin,n_samples,q_at_max,f_max,chi_star,deviation\n";
    for (const ScanBin& b : bins) {
      side += fmt12(b.q_bin) + "," + std::to_string(b.count) + "," +
              fmt12(b.q_at_max) + "," + fmt12(b.f_max) + "," + fmt12(b.chi_star) +
              "," + fmt12(b.deviation) + "\n";
    }
    out.main_content = std::move(csv);
    out.sidecar_content = std::move(side);
  } else {
    json doc;
    doc["records"] = json::array();
    for (const ScanRecord& r : records) {
      doc["records"].push_back({{"q", r.q}, {"f", r.f}});
    }
    doc["bins"] = json::array();
    for (const ScanBin& b : bins) {
      doc["bins"].push_back({{"q_bin", b.q_bin},
                             {"n_samples", b.count},
                             {"q_at_max", b.q_at_max},
                             {"f_max", b.f_max},
                             {"chi_star", b.chi_star},
                             {"deviation", b.deviation}});
    }
    out.main_content = doc.dump(2) + "\n";
  }
  return out;
}

CommandOutput run_verify(const RunConfig& config) {
  std::vector<std::string> wanted = config.checks;
  if (wanted.empty() || (wanted.size() == 1 && wanted[0] == "all")) {
    wanted = {"dpi", "superadditivity_I", "superadditivity_II", "lemma1",
              "subadditivity"};
  }
  std::vector<PropertyReport> reports;
  for (const std::string& name : wanted) {
    if (name == "dpi") {
      reports.push_back(check_dpi(config.n, config.seed));
    } else if (name == "superadditivity_I") {
      reports.push_back(check_superadditivity_i(config.n, config.seed));
    } else if (name == "superadditivity_II") {
      reports.push_back(check_superadditivity_ii(config.n, config.seed));
    } else if (name == "lemma1") {
      const CovariantGroup group = weyl_group(2);
      const std::vector<std::pair<std::string, KrausChannel>> channels = {
          {"depolarizing:d=2,lam=0.3", depolarizing(2, 0.3)},
          {"erasure:d=2,eps=0.25", erasure(2, 0.25)},
          {"dephasing:gamma=0.5", dephasing(0.5)},
      };
      for (const auto& [label, ch] : channels) {
        PropertyReport r = check_lemma1(ch, group, config.n, config.seed);
        r.name = "lemma1(" + label + ")";
        reports.push_back(std::move(r));
      }
    } else if (name == "subadditivity") {
      reports.push_back(check_subadditivity(config.n, config.seed));
    } else {
      throw std::invalid_argument("verify: unknown check '" + name + "'");
    }
  }

  CommandOutput out;
  for (const PropertyReport& r : reports) {
    if (r.failures > 0) out.exit_code = 3;
  }
  if (config.format == OutputFormat::kCsv) {
    std::string csv = "check,instances,min_slack,failures,seed\n";
    for (const PropertyReport& r : reports) {
      csv += r.name + "," + std::to_string(r.instances) + "," +
             fmt12(r.min_slack) + "," + std::to_string(r.failures) + "," +
             std::to_string(r.seed) + "\n";
    }
    out.main_content = std::move(csv);
  } else {
    json rows = json::array();
    for (const PropertyReport& r : reports) {
      rows.push_back({{"check", r.name},
                      {"instances", r.instances},
                      {"min_slack", r.min_slack},
                      {"failures", r.failures},
                      {"seed", r.seed}});
    }
    out.main_content = rows.dump(2) + "\n";
  }
  return out;
}

CommandOutput run_info(const RunConfig& config) {
  const ChannelDescription desc = describe_channel(config.channel_spec);
  const KrausChannel& ch = desc.channel;
  std::string covariant = "unsupported";
  std::string residual = "nan";
  if (ch.dout() == ch.din() || ch.dout() == ch.din() + 1) {
    const CovarianceReport rep =
        check_generalized_covariance(ch, weyl_group(ch.din()));
    covariant = rep.covariant ? "true" : "false";
    residual = fmt12(rep.worst_residual);
  }
  CommandOutput out;
  if (config.format == OutputFormat::kCsv) {
    out.main_content = "key,value\n";
    out.main_content += "name," + desc.name + "\n";
    out.main_content += "din," + std::to_string(ch.din()) + "\n";
    out.main_content += "dout," + std::to_string(ch.dout()) + "\n";
    out.main_content += "kraus_count," + std::to_string(ch.kraus().size()) + "\n";
    out.main_content += "weyl_covariant," + covariant + "\n";
    out.main_content += "covariance_residual," + residual + "\n";
  } else {
    json doc{{"name", desc.name},
             {"din", ch.din()},
             {"dout", ch.dout()},
             {"kraus_count", ch.kraus().size()},
             {"weyl_covariant", covariant},
             {"covariance_residual", residual}};
    out.main_content = doc.dump(2) + "\n";
  }
  return out;
}

Matrix parse_rho_w(const std::string& text) {
  if (text == "maximally_mixed") return maximally_mixed(2);
  if (text == "pure0") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
  }
  const std::string prefix = "diag=";
  if (text.rfind(prefix, 0) == 0) {
    const double p = std::stod(text.substr(prefix.size()));
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("eve-bound: diag probability must lie in [0, 1]");
    }
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    return m;
  }
  throw std::invalid_argument(
      "eve-bound: rho_w must be maximally_mixed, pure0, or diag=<p>");
}

EncodingEnsemble parse_encoding(const std::string& text, int d) {
  if (text == "identity") return identity_encoding(d);
  if (text == "weyl") return weyl_encoding(d);
  if (text == "reset") return reset_encoding(d);
  throw std::invalid_argument("eve-bound: encoding must be identity, weyl, or reset");
}

CommandOutput run_eve_bound(const RunConfig& config) {
  const ChannelDescription desc = describe_channel(config.channel_spec);
  const EncodingEnsemble enc = parse_encoding(config.encoding, desc.channel.din());
  ConstraintSpec cons;
  cons.clauses.push_back({ConstraintQuantity::kMutualInformation,
                          Comparator::kEqual, config.constraint_y,
                          config.constraint_tol});
  cons.fixed_marginal_w = parse_rho_w(config.rho_w);
  const CapacityResult res =
      eve_bound(desc.channel, enc, cons, config.budget, config.seed);

  CommandOutput out;
  out.exit_code = res.feasible ? 0 : 3;
  if (config.format == OutputFormat::kCsv) {
    std::string header = "value,feasible,samples_evaluated,seed";
    std::string row = fmt12(res.value) + "," + (res.feasible ? "1" : "0") + "," +
                      std::to_string(res.samples_evaluated) + "," +
                      std::to_string(res.seed);
    for (std::size_t i = 0; i < res.constraint_slacks.size(); ++i) {
      header += ",slack_" + std::to_string(i);
      row += "," + fmt12(res.constraint_slacks[i]);
    }
    out.main_content = header + "\n" + row + "\n";
  } else {
    json doc{{"value", res.value},
             {"feasible", res.feasible},
             {"samples_evaluated", res.samples_evaluated},
             {"seed", res.seed},
             {"constraint_slacks", res.constraint_slacks},
             {"argmax_params", res.argmax_params}};
    out.main_content = doc.dump(2) + "\n";
  }
  return out;
}

}  // namespace

ChannelDescription describe_channel(const std::string& spec) {
  const std::string text = trim(spec);
  if (text.empty()) {
    throw std::invalid_argument("channel spec: empty string");
  }
  if (text.front() == '{') {
    return from_json_value(json::parse(text));
  }
  if (std::filesystem::exists(text)) {
    std::ifstream f(text);
    if (!f) {
      throw std::runtime_error("cannot read channel file '" + text + "'");
    }
    json j;
    f >> j;
    return from_json_value(j);
  }
  return from_text(text);
}

KrausChannel parse_channel_spec(const std::string& spec) {
  return describe_channel(spec).channel;
}

std::string channel_to_json(const KrausChannel& ch) {
  json doc;
  doc["din"] = ch.din();
  doc["dout"] = ch.dout();
  doc["kraus"] = json::array();
  for (const Matrix& k : ch.kraus()) {
    json jk = json::array();
    for (int r = 0; r < k.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < k.cols(); ++c) {
        row.push_back({k(r, c).real(), k(r, c).imag()});
      }
      jk.push_back(std::move(row));
    }
    doc["kraus"].push_back(std::move(jk));
  }
  return doc.dump(2);
}

std::vector<double> parse_grid(const std::string& text) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3) {
    throw std::invalid_argument("grid: expected start:stop:step, got '" + text + "'");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("grid: step must be > 0");
  }
  if (stop < start) {
    throw std::invalid_argument("grid: stop must be >= start");
  }
  std::vector<double> grid;
  for (long long k = 0;; ++k) {
    const double y = start + static_cast<double>(k) * step;
    if (y > stop + 1e-9) break;
    grid.push_back(y);
  }
  return grid;
}

std::string sidecar_path(const std::string& out_path) {
  const std::filesystem::path p(out_path);
  std::filesystem::path side = p.parent_path();
  side /= p.stem();
  side += "_bins";
  side += p.extension();
  return side.string();
}

int run(const RunConfig& config) {
  try {
    const bool stochastic = config.command != Command::kInfo;
    if (stochastic && !config.seed_set) {
      throw std::invalid_argument("a --seed value is required for this command");
    }
    CommandOutput out;
    switch (config.command) {
      case Command::kCapcurve:
        out = run_capcurve(config);
        break;
      case Command::kScan:
        if (config.out_path.empty()) {
          throw std::invalid_argument("scan: --out is required");
        }
        out = run_scan(config);
        break;
      case Command::kVerify:
        out = run_verify(config);
        break;
      case Command::kInfo:
        out = run_info(config);
        break;
      case Command::kEveBound:
        out = run_eve_bound(config);
        break;
    }
    emit(config.out_path, out.main_content);
    if (!out.sidecar_content.empty()) {
      atomic_write(sidecar_path(config.out_path), out.sidecar_content);
    }
    return out.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace chancap
