#include "intricacy/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "intricacy/error.hpp"

namespace intricacy::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

template <typename T>
T get(const json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError("malformed field " + what);
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const Eigen::MatrixXi& adjacency) {
  std::ostringstream key;
  key << adjacency.rows() << ':';
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i)
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j) key << adjacency(i, j);
  char name[40];
  std::snprintf(name, sizeof name, "reach-%016llx.json", static_cast<unsigned long long>(fnv1a(key.str())));
  return dir / name;
}

std::vector<BoolMatrix> load_reach(const std::filesystem::path& file) {
  std::vector<BoolMatrix> reach;
  std::ifstream in(file);
  if (!in) return reach;
  try {
    const json j = json::parse(in);
    for (const auto& m : j.at("reach")) {
      const auto rows = static_cast<Eigen::Index>(m.size());
      BoolMatrix b(rows, rows);
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(m[r].size()) != rows) return {};
        for (Eigen::Index c = 0; c < rows; ++c) b(r, c) = m[r][c].get<int>() != 0;
      }
      reach.push_back(std::move(b));
    }
  } catch (const std::exception&) {
    warn("ignoring unreadable reachability cache " + file.string());
    return {};
  }
  return reach;
}

void store_reach(const std::filesystem::path& file, const Sft& sft) {
  json j;
  j["reach"] = json::array();
  for (const auto& b : sft.reach_cache()) {
    json m = json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(static_cast<int>(b(r, c)));
      m.push_back(row);
    }
    j["reach"].push_back(m);
  }
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      warn("cannot write reachability cache to " + file.string());
      return;
    }
    out << j.dump();
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) warn("cannot write reachability cache to " + file.string());
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Sft parse_sft(const std::string& json_text, const std::optional<std::filesystem::path>& cache_dir) {
  const json j = parse_json(json_text, "shift file");
  if (!j.is_object() || !j.contains("alphabet_size")) throw InputError("shift file needs alphabet_size");
  const int r = get<int>(j["alphabet_size"], "alphabet_size");
  if (r < 2) throw InputError("alphabet_size must be at least 2");
  const bool has_adj = j.contains("adjacency");
  const bool has_words = j.contains("forbidden_words");
  if (has_adj == has_words) throw InputError("shift file needs exactly one of adjacency, forbidden_words");
  if (has_words) return Sft::from_forbidden_words(r, get<std::vector<std::string>>(j["forbidden_words"], "forbidden_words"));

  const auto rows = get<std::vector<std::vector<int>>>(j["adjacency"], "adjacency");
  if (static_cast<int>(rows.size()) != r) throw InputError("adjacency must have alphabet_size rows");
  Eigen::MatrixXi m(r, r);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != r) throw InputError("adjacency must be square");
    for (int k = 0; k < r; ++k) m(i, k) = rows[i][k];
  }
  if (!cache_dir) return Sft::from_adjacency(m);
  const auto file = cache_file(*cache_dir, m);
  auto reach = load_reach(file);
  const bool had_cache = !reach.empty();
  Sft sft = Sft::from_adjacency(m, std::move(reach));
  if (!had_cache) store_reach(file, sft);
  return sft;
}

Sft read_sft(const std::filesystem::path& path, const std::optional<std::filesystem::path>& cache_dir) {
  return parse_sft(read_text(path), cache_dir);
}

Potential parse_potential(const std::string& json_text, int alphabet_size) {
  const json j = parse_json(json_text, "potential file");
  if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
    throw InputError("potential file needs a \"values\" object");
  std::map<int, double> values;
  for (const auto& [key, v] : j["values"].items()) {
    int symbol = 0;
    try {
      std::size_t used = 0;
      symbol = std::stoi(key, &used);
      if (used != key.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("potential key '" + key + "' is not a symbol");
    }
    values[symbol] = get<double>(v, "values." + key);
  }
  return Potential::from_map(values, alphabet_size);
}

MarkovMeasure parse_markov(const std::string& json_text) {
  const json j = parse_json(json_text, "Markov file");
  if (!j.is_object() || !j.contains("P")) throw InputError("Markov file needs P");
  const int k = j.contains("block_len") ? get<int>(j["block_len"], "block_len") : 1;
  const auto rows = get<std::vector<std::vector<double>>>(j["P"], "P");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd P(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) throw InputError("P must be square");
    for (Eigen::Index c = 0; c < n; ++c) P(i, c) = rows[i][c];
  }
  std::optional<Eigen::VectorXd> p;
  if (j.contains("p")) {
    const auto v = get<std::vector<double>>(j["p"], "p");
    p = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  const int alphabet = j.contains("alphabet_size") ? get<int>(j["alphabet_size"], "alphabet_size") : 0;
  if (k == 1 && !j.contains("states")) return MarkovMeasure::one_step(P, p);
  if (!j.contains("states")) throw InputError("block chains need a states list");
  const auto states = get<std::vector<std::string>>(j["states"], "states");
  for (const auto& s : states) {
    if (static_cast<int>(s.size()) != k) throw InputError("state '" + s + "' does not have length block_len");
  }
  return MarkovMeasure::block_chain(states, P, p, alphabet);
}

MarkovFamily parse_family(const std::string& json_text) {
  const json j = parse_json(json_text, "family file");
  for (const char* key : {"states", "parameters", "P"}) {
    if (!j.contains(key)) throw InputError(std::string("family file needs ") + key);
  }
  const auto states = get<std::vector<std::string>>(j["states"], "states");
  const auto params = get<std::vector<std::string>>(j["parameters"], "parameters");
  std::vector<std::vector<MarkovFamily::Entry>> matrix;
  for (const auto& row : j["P"]) {
    std::vector<MarkovFamily::Entry> entries;
    for (const auto& e : row) {
      if (e.is_number()) {
        entries.emplace_back(e.get<double>());
      } else if (e.is_string()) {
        const auto s = e.get<std::string>();
        if (s == "rest") {
          entries.emplace_back(MarkovFamily::Rest{});
          continue;
        }
        const auto it = std::find(params.begin(), params.end(), s);
        if (it == params.end()) throw InputError("template entry '" + s + "' is not a parameter");
        entries.emplace_back(static_cast<int>(it - params.begin()));
      } else {
        throw InputError("template entries must be numbers or strings");
      }
    }
    matrix.push_back(std::move(entries));
  }
  std::vector<std::pair<double, double>> box;
  if (j.contains("box")) {
    for (const auto& b : get<std::vector<std::vector<double>>>(j["box"], "box")) {
      if (b.size() != 2) throw InputError("box entries are [lo, hi]");
      box.emplace_back(b[0], b[1]);
    }
  }
  const std::string name = j.contains("name") ? get<std::string>(j["name"], "name") : "custom";
  return MarkovFamily::from_template(name, states, params, std::move(matrix), std::move(box));
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* v = std::getenv("INTRICACY_CACHE_DIR");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

}  // namespace intricacy::io
