#include "jex/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "jex/errors.hpp"
#include "jex/existence.hpp"
#include "jex/json_io.hpp"
#include "jex/model.hpp"
#include "jex/stats.hpp"
#include "jex/transforms.hpp"

namespace jex::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("malformed number list: \"" + text + "\"");
    }
  }
  if (values.empty()) throw UsageError("empty number list");
  return values;
}

void write_sample_csv(std::ostream& out, const SampleBatch& batch) {
  for (int i = 1; i <= batch.n; ++i) out << "x" << i << ",";
  out << "region\n";
  for (Eigen::Index row = 0; row < batch.rows.rows(); ++row) {
    for (int i = 0; i < batch.n; ++i) out << fmt17(batch.rows(row, i)) << ",";
    out << batch.regions[static_cast<std::size_t>(row)].label() << "\n";
  }
}

struct PointTable {
  Eigen::MatrixXd rows;
  std::vector<std::string> regions;  // empty when the column is absent
};

PointTable read_points_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV input: " + name);
  std::vector<std::string> header;
  {
    std::stringstream stream(line);
    std::string token;
    while (std::getline(stream, token, ',')) header.push_back(token);
  }
  bool has_region = !header.empty() && header.back() == "region";
  const int n = static_cast<int>(header.size()) - (has_region ? 1 : 0);
  if (n < 1) throw UsageError("CSV has no coordinate columns: " + name);

  std::vector<std::vector<double>> data;
  PointTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream stream(line);
    std::string token;
    std::vector<double> coords;
    std::string region;
    int column = 0;
    while (std::getline(stream, token, ',')) {
      if (column < n) {
        try {
          coords.push_back(std::stod(token));
        } catch (const std::exception&) {
          throw UsageError("malformed CSV number \"" + token + "\" in " + name);
        }
      } else {
        region = token;
      }
      ++column;
    }
    if (static_cast<int>(coords.size()) != n) {
      throw UsageError("CSV row with wrong field count in " + name);
    }
    data.push_back(std::move(coords));
    if (has_region) table.regions.push_back(region);
  }
  table.rows.resize(static_cast<Eigen::Index>(data.size()), n);
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (int i = 0; i < n; ++i) {
      table.rows(static_cast<Eigen::Index>(r), i) = data[r][i];
    }
  }
  return table;
}

/// Writes to the file when a path is given, otherwise to fallback.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit_json(std::ostream& out, const nlohmann::json& j) {
  out << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"construction, sampling and verification of jointly "
               "exclusive random vectors"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string input_path;
  std::string points_path;
  std::string t_list;
  std::string shift_list;
  std::string mode;
  std::string strategy_name;
  std::optional<double> lambda_opt;
  std::optional<double> t_opt;
  std::optional<std::uint64_t> seed_opt;
  int count = 1000000;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("config,--config", config_path, "model configuration JSON")
        ->required();
  };

  CLI::App* cmd_check = app.add_subcommand(
      "check", "existence reports for the configured marginals");
  add_config(cmd_check);

  CLI::App* cmd_allocate =
      app.add_subcommand("allocate", "solve for a feasible face allocation");
  add_config(cmd_allocate);
  cmd_allocate->add_option("--strategy", strategy_name,
                           "max-face-mass | scaled | trivariate-lambda");
  cmd_allocate->add_option("--lambda", lambda_opt,
                           "trivariate interpolation parameter");
  cmd_allocate->add_option("--t", t_opt, "scale factor for the scaled strategy");

  CLI::App* cmd_build =
      app.add_subcommand("build", "validate the model and print its summary");
  add_config(cmd_build);

  CLI::App* cmd_sample = app.add_subcommand("sample", "draw rows as CSV");
  add_config(cmd_sample);
  cmd_sample->add_option("--count", count, "number of rows");
  cmd_sample->add_option("--seed", seed_opt, "random seed (overrides config)");
  cmd_sample->add_option("--output,-o", output_path, "output CSV path");

  CLI::App* cmd_export = app.add_subcommand(
      "export-support", "sampled point cloud with region tags for plotting");
  add_config(cmd_export);
  cmd_export->add_option("--count", count, "number of rows");
  cmd_export->add_option("--seed", seed_opt, "random seed (overrides config)");
  cmd_export->add_option("--output,-o", output_path, "output CSV path");

  CLI::App* cmd_cdf =
      app.add_subcommand("cdf", "evaluate the model CDF at CSV points");
  add_config(cmd_cdf);
  cmd_cdf->add_option("--points", points_path, "input CSV of points")
      ->required();
  cmd_cdf->add_option("--output,-o", output_path, "output CSV path");

  CLI::App* cmd_corr = app.add_subcommand(
      "corr", "Monte Carlo Pearson correlation matrix");
  add_config(cmd_corr);
  cmd_corr->add_option("--count", count, "number of rows");
  cmd_corr->add_option("--seed", seed_opt, "random seed (overrides config)");

  CLI::App* cmd_cfcheck = app.add_subcommand(
      "cfcheck", "characteristic-function product magnitude");
  add_config(cmd_cfcheck);
  cmd_cfcheck->add_option("--t", t_list, "comma-joined frequencies t1,t2,...")
      ->required();
  cmd_cfcheck->add_option("--count", count, "number of rows");
  cmd_cfcheck->add_option("--seed", seed_opt, "random seed (overrides config)");

  CLI::App* cmd_transform = app.add_subcommand(
      "transform", "apply je2jm | jm2je | reflect | translate to CSV rows");
  cmd_transform->add_option("--mode", mode, "je2jm | jm2je | reflect | translate")
      ->required();
  cmd_transform->add_option("--input,-i", input_path, "input CSV path")
      ->required();
  cmd_transform->add_option("--shift", shift_list,
                            "comma-joined translation l1,l2,...");
  cmd_transform->add_option("--output,-o", output_path, "output CSV path");

  std::vector<const char*> argv;
  argv.push_back("jex");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out, err);
    }

    if (cmd_check->parsed()) {
      const ModelConfig config = load_config(config_path);
      nlohmann::json result{
          {"me", report_to_json(check_me(config.marginals))},
          {"je", report_to_json(check_je(config.marginals))}};
      if (!config.distortions.empty()) {
        result["gje"] =
            report_to_json(check_gje(config.marginals, config_caps(config)));
      }
      emit_json(out, result);
      return 0;
    }

    if (cmd_allocate->parsed()) {
      ModelConfig config = load_config(config_path);
      if (!strategy_name.empty()) {
        nlohmann::json j{{"strategy", strategy_name}};
        if (lambda_opt) j["lambda"] = *lambda_opt;
        if (t_opt) j["t"] = *t_opt;
        config.strategy = parse_strategy(j);
      }
      emit_json(out, allocation_to_json(config_allocation(config)));
      return 0;
    }

    if (cmd_build->parsed()) {
      const ModelConfig config = load_config(config_path);
      emit_json(out, model_summary_json(config_model(config)));
      return 0;
    }

    if (cmd_sample->parsed() || cmd_export->parsed()) {
      const ModelConfig config = load_config(config_path);
      const JEModel model = config_model(config);
      Rng rng(seed_opt.value_or(config.seed));
      const SampleBatch batch = model.sample(rng, count);
      OutputTarget target(output_path, out);
      write_sample_csv(target.stream(), batch);
      return 0;
    }

    if (cmd_cdf->parsed()) {
      const ModelConfig config = load_config(config_path);
      const JEModel model = config_model(config);
      std::ifstream in(points_path);
      if (!in) throw IoError("cannot open points file: " + points_path);
      const PointTable table = read_points_csv(in, points_path);
      if (table.rows.cols() != model.dimension()) {
        throw ShapeError("points CSV has " + std::to_string(table.rows.cols()) +
                         " coordinates, model expects " +
                         std::to_string(model.dimension()));
      }
      OutputTarget target(output_path, out);
      std::ostream& os = target.stream();
      for (int i = 1; i <= model.dimension(); ++i) os << "x" << i << ",";
      os << "cdf\n";
      for (Eigen::Index row = 0; row < table.rows.rows(); ++row) {
        const Eigen::VectorXd x = table.rows.row(row);
        for (Eigen::Index i = 0; i < x.size(); ++i) os << fmt17(x[i]) << ",";
        os << fmt17(model.cdf(x)) << "\n";
      }
      return 0;
    }

    if (cmd_corr->parsed()) {
      const ModelConfig config = load_config(config_path);
      const JEModel model = config_model(config);
      Rng rng(seed_opt.value_or(config.seed));
      const Eigen::MatrixXd corr = pearson_matrix(model, rng, count);
      nlohmann::json matrix = nlohmann::json::array();
      for (Eigen::Index i = 0; i < corr.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < corr.cols(); ++j) row.push_back(corr(i, j));
        matrix.push_back(row);
      }
      emit_json(out, nlohmann::json{{"n", model.dimension()},
                                    {"count", count},
                                    {"pearson", matrix}});
      return 0;
    }

    if (cmd_cfcheck->parsed()) {
      const ModelConfig config = load_config(config_path);
      const JEModel model = config_model(config);
      const std::vector<double> ts = parse_double_list(t_list);
      Eigen::VectorXd t(static_cast<Eigen::Index>(ts.size()));
      for (std::size_t i = 0; i < ts.size(); ++i) {
        t[static_cast<Eigen::Index>(i)] = ts[i];
      }
      Rng rng(seed_opt.value_or(config.seed));
      const double magnitude = cf_product_identity(model, t, rng, count);
      emit_json(out, nlohmann::json{{"t", ts},
                                    {"count", count},
                                    {"magnitude", magnitude}});
      return 0;
    }

    if (cmd_transform->parsed()) {
      std::ifstream in(input_path);
      if (!in) throw IoError("cannot open input file: " + input_path);
      const PointTable table = read_points_csv(in, input_path);

      Eigen::MatrixXd rows;
      if (mode == "je2jm") {
        rows = apply_rows(table.rows, [](const Eigen::VectorXd& x) {
          return je_to_jm(x);
        });
      } else if (mode == "jm2je") {
        rows = apply_rows(table.rows, [](const Eigen::VectorXd& y) {
          return jm_to_je(y);
        });
      } else if (mode == "reflect") {
        rows = apply_rows(table.rows, [](const Eigen::VectorXd& x) {
          return reflect(x);
        });
      } else if (mode == "translate") {
        if (shift_list.empty()) {
          throw UsageError("translate mode requires --shift");
        }
        const std::vector<double> ls = parse_double_list(shift_list);
        if (static_cast<Eigen::Index>(ls.size()) != table.rows.cols()) {
          throw ShapeError("shift length does not match the coordinate count");
        }
        Eigen::VectorXd shift(static_cast<Eigen::Index>(ls.size()));
        for (std::size_t i = 0; i < ls.size(); ++i) {
          shift[static_cast<Eigen::Index>(i)] = ls[i];
        }
        rows = apply_rows(table.rows, [&shift](const Eigen::VectorXd& x) {
          return translate(x, shift);
        });
      } else {
        throw UsageError("unknown transform mode \"" + mode + "\"");
      }

      OutputTarget target(output_path, out);
      std::ostream& os = target.stream();
      for (Eigen::Index i = 1; i <= rows.cols(); ++i) {
        os << "x" << i << (i < rows.cols() ? "," : "");
      }
      if (!table.regions.empty()) os << ",region";
      os << "\n";
      for (Eigen::Index row = 0; row < rows.rows(); ++row) {
        for (Eigen::Index i = 0; i < rows.cols(); ++i) {
          os << fmt17(rows(row, i)) << (i + 1 < rows.cols() ? "," : "");
        }
        if (!table.regions.empty()) {
          os << "," << table.regions[static_cast<std::size_t>(row)];
        }
        os << "\n";
      }
      return 0;
    }

    err << "error: no subcommand given\n";
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace jex::cli
