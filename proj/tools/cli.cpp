#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "petrisim/engine.hpp"
#include "petrisim/model_file.hpp"

namespace petrisim::cli {

namespace {

struct Options {
  std::string model_path;
  std::string builtin;
  std::optional<double> length;
  std::optional<double> timestep;
  std::optional<long long> report_frequency;
  std::string out_path = "-";
  std::string format = "csv";
  bool stream = false;
};

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::IoError, "cannot open model file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) {
    throw Error(ErrorCode::IoError, "cannot read model file '" + path + "'");
  }
  return buffer.str();
}

LoadedModel load(const Options& options) {
  if (!options.builtin.empty() && !options.model_path.empty()) {
    throw Error(ErrorCode::InvalidConfig,
                "pass either a model file or --builtin, not both");
  }
  if (!options.builtin.empty()) {
    auto doc = find_builtin(options.builtin);
    if (!doc) {
      std::string names;
      for (const std::string& name : builtin_names()) {
        names += names.empty() ? name : ", " + name;
      }
      throw Error(ErrorCode::InvalidConfig, "no built-in model named '" +
                                                options.builtin +
                                                "' (available: " + names + ")");
    }
    LoadedModel loaded;
    loaded.name = doc->name;
    loaded.net = instantiate_model(*doc);
    loaded.defaults = doc->defaults;
    return loaded;
  }
  if (options.model_path.empty()) {
    throw Error(ErrorCode::InvalidConfig,
                "pass a model file or --builtin NAME");
  }
  try {
    return load_model(read_file(options.model_path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(e.code(), options.model_path + ": " + e.what());
  }
}

double require_value(std::optional<double> flag, std::optional<double> fallback,
                     const char* what, const char* flag_name) {
  if (flag) return *flag;
  if (fallback) return *fallback;
  throw Error(ErrorCode::InvalidConfig,
              std::string("no ") + what + " given: pass " + flag_name +
                  " or add it to the model's defaults");
}

int run_command(const Options& options, std::ostream& out, std::ostream& err) {
  LoadedModel loaded = load(options);
  PetriNet& net = loaded.net;

  double length = require_value(options.length, loaded.defaults.length,
                                "simulation length", "--length");
  double timestep = require_value(options.timestep, loaded.defaults.timestep,
                                  "timestep", "--dt");
  long long frequency = options.report_frequency
                            ? *options.report_frequency
                            : loaded.defaults.report_frequency.value_or(0);
  if (frequency == 0) {
    throw Error(ErrorCode::InvalidConfig,
                "no report frequency given: pass --report-every or add it to "
                "the model's defaults");
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (options.out_path != "-") {
    file.open(options.out_path, std::ios::binary);
    if (!file) {
      throw Error(ErrorCode::IoError,
                  "cannot open output file '" + options.out_path + "'");
    }
    sink = &file;
  }

  bool csv = options.format == "csv";
  long long start_step = net.step_index();
  if (options.stream) {
    // Row-by-row output: only one frame is alive at a time.
    SimulationStream stream = simulate_stream(net, length, timestep);
    SimulationRecord initial = report_frame(net.frame());
    if (csv) {
      write_csv_header(initial.labels, *sink);
      write_csv_row(initial, *sink);
    } else {
      *sink << '[' << json_record(initial);
    }
    long long step = 0;
    while (auto frame = stream.next()) {
      ++step;
      if (step % frequency != 0) continue;
      SimulationRecord record = report_frame(*frame);
      if (csv) {
        write_csv_row(record, *sink);
      } else {
        *sink << ',' << json_record(record);
      }
    }
    if (!csv) *sink << "]\n";
  } else {
    std::vector<SimulationRecord> records =
        simulate(net, length, timestep, frequency);
    if (csv) {
      write_csv(records, *sink);
    } else {
      write_json(records, *sink);
    }
  }

  sink->flush();
  bool written = sink->good();
  if (sink == &file) {
    file.close();
    written = written && file.good();
  }
  if (!written) {
    throw Error(ErrorCode::IoError,
                "failed writing output to '" + options.out_path + "'");
  }

  err << "simulated " << net.step_index() - start_step
      << " steps, final clock " << format_double(net.clock()) << "\n";
  return 0;
}

int validate_command(const Options& options, std::ostream& out) {
  LoadedModel loaded = load(options);
  out << loaded.net.user_place_count() << " places, "
      << loaded.net.rule_count() << " rules\n";
  return 0;
}

int examples_command(std::ostream& out) {
  for (const std::string& name : builtin_names()) {
    ModelDocument doc = *find_builtin(name);
    out << name << "\tlength=" << format_double(*doc.defaults.length)
        << " dt=" << format_double(*doc.defaults.timestep)
        << " report-every=" << *doc.defaults.report_frequency << "\n";
  }
  return 0;
}

void add_model_options(CLI::App* cmd, Options& options) {
  cmd->add_option("model", options.model_path, "Path to a model file");
  cmd->add_option("--builtin", options.builtin,
                  "Use a built-in model (see the 'examples' subcommand)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Time-step token-transition net simulator"};
  app.require_subcommand(1);

  Options options;
  double length = 0;
  double timestep = 0;
  long long frequency = 0;

  CLI::App* run = app.add_subcommand(
      "run", "Simulate a model and write its time series");
  add_model_options(run, options);
  auto* length_opt =
      run->add_option("--length", length, "Total simulated time");
  auto* dt_opt = run->add_option("--dt", timestep, "Time step");
  auto* freq_opt = run->add_option("--report-every", frequency,
                                   "Record every Nth step")
                       ->check(CLI::PositiveNumber);
  run->add_option("--out", options.out_path,
                  "Output file path, or '-' for standard output");
  run->add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--stream", options.stream,
                "Stream rows instead of storing the whole run");

  CLI::App* validate = app.add_subcommand(
      "validate", "Load and fully check a model without simulating");
  add_model_options(validate, options);

  CLI::App* examples =
      app.add_subcommand("examples", "List built-in models");

  std::vector<char*> argv;
  std::string program = "petrisim";
  argv.push_back(program.data());
  std::vector<std::string> owned = args;
  for (std::string& arg : owned) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (length_opt->count() > 0) options.length = length;
  if (dt_opt->count() > 0) options.timestep = timestep;
  if (freq_opt->count() > 0) options.report_frequency = frequency;

  try {
    if (run->parsed()) return run_command(options, out, err);
    if (validate->parsed()) return validate_command(options, out);
    if (examples->parsed()) return examples_command(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace petrisim::cli
