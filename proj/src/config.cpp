#include "qstc/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qstc/errors.hpp"

namespace qstc {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_double_field(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(where + ": expected a number, got \"" + text + "\"");
  }
}

std::int64_t parse_int_field(const std::string& text, const std::string& where) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw UsageError(where + ": expected an integer, got \"" + text + "\"");
  return v;
}

}  // namespace

std::vector<double> parse_snr_spec(const std::string& spec) {
  const std::string text = trim(spec);
  if (text.empty()) throw UsageError("snr spec: empty");
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("snr spec: expected a:b:step");
    const double lo = parse_double_field(parts[0], "snr spec");
    const double hi = parse_double_field(parts[1], "snr spec");
    const double step = parse_double_field(parts[2], "snr spec");
    if (step <= 0.0) throw UsageError("snr spec: step must be positive");
    for (double v = lo; v <= hi + 1e-9; v += step) grid.push_back(v);
  } else {
    for (const std::string& part : split(text, ','))
      grid.push_back(parse_double_field(part, "snr spec"));
  }
  return grid;
}

std::vector<std::string> parse_scheme_list(const std::string& spec) {
  std::vector<std::string> schemes;
  for (const std::string& part : split(spec, ','))
    if (!part.empty()) schemes.push_back(part);
  if (schemes.empty()) throw UsageError("schemes: empty list");
  return schemes;
}

RunOptions load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open \"" + path + "\"");

  RunOptions options;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path + ":" + std::to_string(line_no);
    std::string text = line;
    if (const std::size_t hash = text.find('#'); hash != std::string::npos)
      text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw UsageError(where + ": expected key = value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (value.empty()) throw UsageError(where + ": empty value for " + key);

    if (key == "schemes") {
      options.sim.schemes = parse_scheme_list(value);
    } else if (key == "snr_db") {
      options.sim.snr_db_grid = parse_snr_spec(value);
    } else if (key == "min_trials") {
      options.sim.min_trials = parse_int_field(value, where);
    } else if (key == "max_trials") {
      options.sim.max_trials = parse_int_field(value, where);
    } else if (key == "target_bit_errors") {
      options.sim.target_bit_errors = parse_int_field(value, where);
    } else if (key == "seed") {
      options.sim.seed = static_cast<std::uint64_t>(parse_int_field(value, where));
    } else if (key == "workers") {
      options.sim.workers = static_cast<int>(parse_int_field(value, where));
    } else if (key == "out") {
      options.out_dir = value;
    } else {
      throw UsageError(where + ": unknown key \"" + key + "\"");
    }
  }
  return options;
}

}  // namespace qstc
