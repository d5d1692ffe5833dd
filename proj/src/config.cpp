#include "endoalg/config.hpp"

#include <fstream>
#include <sstream>

#include "endoalg/errors.hpp"

namespace endoalg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.emplace_back(tok);
  return out;
}

std::string join_int_list(const std::vector<Int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += " ";
    s += xs[i].str();
  }
  return s;
}

}  // namespace

ContextConfig ContextConfig::parse(const std::string& text) {
  ContextConfig cfg;
  bool saw_rank = false, saw_matrix = false;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "version") {
        cfg.version = std::stoi(val);
      } else if (key == "rank") {
        cfg.rank = static_cast<std::size_t>(std::stoul(val));
        saw_rank = true;
      } else if (key == "matrix") {
        cfg.matrix = parse_int_list(val);
        saw_matrix = true;
      } else if (key == "moduli") {
        cfg.moduli = parse_int_list(val);
      } else if (key == "max_depth") {
        cfg.max_depth = std::stoi(val);
      } else if (key == "enum_cap") {
        cfg.enum_cap = Int(val);
      } else if (key == "declared_pure") {
        if (val != "true" && val != "false")
          throw ConfigError("declared_pure must be true or false");
        cfg.declared_pure = (val == "true");
        cfg.has_declared_pure = true;
      } else {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": bad value for '" + key +
                        "': " + e.what());
    }
  }
  if (!saw_rank) throw ConfigError("missing key 'rank'");
  if (!saw_matrix) throw ConfigError("missing key 'matrix'");
  cfg.validate();
  return cfg;
}

ContextConfig ContextConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

std::string ContextConfig::serialize() const {
  std::ostringstream os;
  os << "version = " << version << "\n";
  os << "rank = " << rank << "\n";
  os << "matrix = " << join_int_list(matrix) << "\n";
  if (!moduli.empty()) os << "moduli = " << join_int_list(moduli) << "\n";
  os << "max_depth = " << max_depth << "\n";
  os << "enum_cap = " << enum_cap.str() << "\n";
  if (has_declared_pure) os << "declared_pure = " << (declared_pure ? "true" : "false") << "\n";
  return os.str();
}

void ContextConfig::validate() const {
  if (version != 1) throw ConfigError("unsupported version " + std::to_string(version));
  if (rank < 1) throw ConfigError("rank must be at least 1");
  if (matrix.size() != rank * rank)
    throw ConfigError("matrix must have rank*rank = " + std::to_string(rank * rank) +
                      " entries, got " + std::to_string(matrix.size()));
  if (!moduli.empty() && moduli.size() != rank)
    throw ConfigError("moduli must have one entry per coordinate");
  for (const Int& m : moduli)
    if (m < 1) throw ConfigError("moduli entries must be positive");
  if (max_depth < 1) throw ConfigError("max_depth must be at least 1");
  if (enum_cap < 1) throw ConfigError("enum_cap must be at least 1");
}

}  // namespace endoalg
