#include "kcover/json_io.hpp"

#include <fstream>
#include <sstream>

#include "kcover/error.hpp"

namespace kcover {

namespace {

template <typename F>
auto parse_guard(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

std::vector<std::uint32_t> index_list(const Json& j) {
  std::vector<std::uint32_t> out;
  for (const auto& v : j) out.push_back(v.get<std::uint32_t>());
  return out;
}

}  // namespace

Json to_json(const BoolMatrix& m) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["labelArity"] = m.label_arity() ? Json(*m.label_arity()) : Json(nullptr);
  Json data = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string line(m.cols(), '0');
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.at(r, c)) line[c] = '1';
    data.push_back(std::move(line));
  }
  j["data"] = std::move(data);
  return j;
}

BoolMatrix matrix_from_json(const Json& j) {
  return parse_guard("matrix JSON", [&] {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    std::optional<int> arity;
    if (j.contains("labelArity") && !j.at("labelArity").is_null()) arity = j.at("labelArity").get<int>();
    const auto& data = j.at("data");
    if (data.size() != rows) throw Error(ErrorKind::Parse, "matrix JSON: data has the wrong number of rows");
    BoolMatrix m(rows, cols, arity);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto line = data[r].get<std::string>();
      if (line.size() != cols) throw Error(ErrorKind::Parse, "matrix JSON: row " + std::to_string(r) + " has the wrong length");
      for (std::size_t c = 0; c < cols; ++c) {
        if (line[c] != '0' && line[c] != '1') throw Error(ErrorKind::Parse, "matrix JSON: entries must be 0 or 1");
        m.set(r, c, line[c] == '1');
      }
    }
    return m;
  });
}

Json to_json(const Covering& cover) {
  const Covering canon = canonicalized(cover);
  Json j;
  j["schema"] = kSchemaVersion;
  j["mode"] = to_string(canon.mode);
  j["depth"] = canon.depth();
  j["baseSizes"] = canon.baseSizes;
  Json rects = Json::array();
  for (const auto& rect : canon.rectangles) {
    Json levels = Json::array();
    for (const auto& level : rect.levels()) {
      Json l;
      l["rows"] = level.rows;
      l["cols"] = level.cols;
      levels.push_back(std::move(l));
    }
    Json r;
    r["levels"] = std::move(levels);
    rects.push_back(std::move(r));
  }
  j["rectangles"] = std::move(rects);
  return j;
}

Covering covering_from_json(const Json& j) {
  return parse_guard("covering JSON", [&] {
    Covering cover;
    cover.mode = parse_mode(j.at("mode").get<std::string>());
    cover.baseSizes = j.at("baseSizes").get<std::vector<std::size_t>>();
    if (j.contains("depth") && j.at("depth").get<std::size_t>() != cover.baseSizes.size()) {
      throw Error(ErrorKind::Parse, "covering JSON: depth disagrees with baseSizes");
    }
    for (const auto& r : j.at("rectangles")) {
      std::vector<Level> levels;
      for (const auto& l : r.at("levels")) levels.push_back(Level{index_list(l.at("rows")), index_list(l.at("cols"))});
      cover.rectangles.emplace_back(std::move(levels));
    }
    validate(cover);
    return cover;
  });
}

Json to_json(const Depth2Circuit& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["semiring"] = to_string(c.semiring);
  j["inputs"] = c.numInputs;
  j["outputs"] = c.numOutputs;
  j["gates"] = c.middleGates;
  j["taps"] = c.outputTaps;
  return j;
}

Depth2Circuit circuit_from_json(const Json& j) {
  return parse_guard("circuit JSON", [&] {
    Depth2Circuit c;
    c.semiring = parse_semiring(j.at("semiring").get<std::string>());
    c.numInputs = j.at("inputs").get<std::size_t>();
    c.numOutputs = j.at("outputs").get<std::size_t>();
    c.middleGates = j.at("gates").get<std::vector<std::vector<std::size_t>>>();
    c.outputTaps = j.at("taps").get<std::vector<std::vector<std::size_t>>>();
    if (c.outputTaps.size() != c.numOutputs) throw Error(ErrorKind::Parse, "circuit JSON: taps must list every output");
    for (const auto& gate : c.middleGates)
      for (auto in : gate)
        if (in >= c.numInputs) throw Error(ErrorKind::Parse, "circuit JSON: gate input out of range");
    for (const auto& taps : c.outputTaps)
      for (auto g : taps)
        if (g >= c.middleGates.size()) throw Error(ErrorKind::Parse, "circuit JSON: tap refers to a missing gate");
    return c;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  return parse_guard("JSON file", [&] { return Json::parse(in); });
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Parse, "failed writing '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace kcover
