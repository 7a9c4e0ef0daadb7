// rydlv: simulate, fit and analyse Lotka-Volterra charge oscillations.
//
//   rydlv <mode> [--config FILE] [--key value ...]
//
// Modes: simulate, simulate-delayed, spectra, fit, discriminate, sense.
// Every config key is also a flag; flags override the file.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "rydlv/config.hpp"
#include "rydlv/csv.hpp"
#include "rydlv/errors.hpp"
#include "rydlv/run.hpp"

namespace io = rydlv::io;

static const char* describe(io::Mode m) {
  switch (m) {
    case io::Mode::simulate: return "integrate the LV model and write trajectory and waveform";
    case io::Mode::simulate_delayed: return "as simulate, with the delayed predation term";
    case io::Mode::spectra: return "transmission versus probe detuning at fixed charge levels";
    case io::Mode::fit: return "recover rates and initial state from a CSV record";
    case io::Mode::discriminate: return "compare waveforms for two predator decay rates";
    case io::Mode::sense: return "field to frequency, or field from a measured pulse train";
  }
  return "";
}

int main(int argc, char** argv) {
  CLI::App app{"Lotka-Volterra charge oscillation toolkit", "rydlv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::version());
  bool list_keys = false;
  app.add_flag("--list-keys", list_keys, "print every config key with its default and exit");

  struct Sub {
    io::Mode mode;
    CLI::App* app;
    std::string config_path;
    std::map<std::string, std::string> flags;
  };
  std::vector<Sub> subs;
  subs.reserve(io::all_modes().size());
  for (io::Mode m : io::all_modes()) {
    Sub& s = subs.emplace_back();
    s.mode = m;
    s.app = app.add_subcommand(std::string(io::mode_name(m)), describe(m));
    s.app->add_option("--config", s.config_path, "key = value config file");
    for (const auto& k : io::config_keys()) {
      s.app->add_option_function<std::string>(
          "--" + k.name, [&s, name = k.name](const std::string& v) { s.flags[name] = v; },
          k.help + " (default: " + (k.default_value.empty() ? "unset" : k.default_value) + ")");
    }
  }

  if (argc > 1 && std::string(argv[1]) == "--list-keys") {
    for (const auto& k : io::config_keys()) {
      std::cout << k.name << '=' << k.default_value << "  # " << k.help << '\n';
    }
    return io::exit_ok;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? io::exit_ok : io::exit_config;
  }

  for (const Sub& s : subs) {
    if (!s.app->parsed()) continue;
    try {
      io::KeyValues file;
      if (!s.config_path.empty()) {
        file = io::parse_config_text(io::read_file(s.config_path), s.config_path);
      }
      const io::RunConfig cfg(s.mode, file, s.flags);
      return io::run(cfg, std::cout, std::cerr);
    } catch (const rydlv::ConfigError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return io::exit_config;
    } catch (const rydlv::IoError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return io::exit_io;
    }
  }
  return io::exit_config;
}
