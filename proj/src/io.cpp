#include "roabp/io.hpp"

#include <fstream>
#include "json.hpp"
#include <sstream>

namespace roabp {
namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& path, const std::string& what) {
  throw ParseError(std::string(source) + ": " + path + ": " + what);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON");
  }
}

const json& member(const json& obj, const char* key, std::string_view source) {
  if (!obj.is_object()) fail(source, "$", "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(source, std::string("$.") + key, "missing");
  return *it;
}

std::int64_t integer(const json& v, std::string_view source, const std::string& path) {
  if (!v.is_number_integer()) fail(source, path, "expected an integer");
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(source, path, "integer out of range");
    return static_cast<std::int64_t>(u);
  }
  return v.get<std::int64_t>();
}

const json& array(const json& v, std::string_view source, const std::string& path) {
  if (!v.is_array()) fail(source, path, "expected an array");
  return v;
}

UniPoly read_poly(const json& v, std::string_view source, const std::string& path) {
  std::vector<Fp> coeffs;
  const json& arr = array(v, source, path);
  for (std::size_t i = 0; i < arr.size(); ++i) coeffs.emplace_back(integer(arr[i], source, path + "[" + std::to_string(i) + "]"));
  return UniPoly(std::move(coeffs));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json poly_json(const UniPoly& p) {
  json arr = json::array();
  for (Fp c : p.coefficients()) arr.push_back(c.value());
  return arr;
}

}  // namespace

RoabpFile parse_roabp(std::string_view text, std::string_view source) {
  const json doc = parse_json(text, source);
  const std::int64_t modulus = integer(member(doc, "modulus", source), source, "$.modulus");
  if (modulus < 2 || !is_prime(static_cast<std::uint64_t>(modulus)) ||
      static_cast<std::uint64_t>(modulus) >= PrimeField::kMaxModulus) {
    fail(source, "$.modulus", "not a prime below 2^62");
  }
  ModulusScope scope(static_cast<std::uint64_t>(modulus));

  const std::int64_t n = integer(member(doc, "n", source), source, "$.n");
  const std::int64_t d = integer(member(doc, "d", source), source, "$.d");
  const std::int64_t w = integer(member(doc, "w", source), source, "$.w");
  if (n < 1 || n > 1'000'000) fail(source, "$.n", "must be a positive count");
  if (d < 0 || d > 1'000'000) fail(source, "$.d", "must be non-negative");

  const json& order_json = array(member(doc, "order", source), source, "$.order");
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < order_json.size(); ++i) {
    const std::string path = "$.order[" + std::to_string(i) + "]";
    const std::int64_t v = integer(order_json[i], source, path);
    if (v < 1 || v > n) fail(source, path, "variable index out of range 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v - 1)]) fail(source, path, "variable listed twice");
    seen[static_cast<std::size_t>(v - 1)] = true;
    order.push_back(static_cast<int>(v - 1));
  }
  if (order.size() != static_cast<std::size_t>(n)) fail(source, "$.order", "must list every variable once");

  const json& layers_json = array(member(doc, "layers", source), source, "$.layers");
  if (layers_json.size() != order.size()) fail(source, "$.layers", "expected one layer per variable");
  std::vector<PolyMatrix<Fp>> layers;
  for (std::size_t k = 0; k < layers_json.size(); ++k) {
    const std::string lpath = "$.layers[" + std::to_string(k) + "]";
    const json& rows = array(layers_json[k], source, lpath);
    if (rows.empty()) fail(source, lpath, "layer has no rows");
    std::size_t cols = 0;
    std::vector<std::vector<UniPoly>> grid;
    int degree = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string rpath = lpath + "[" + std::to_string(i) + "]";
      const json& row = array(rows[i], source, rpath);
      if (i == 0) cols = row.size();
      if (row.empty()) fail(source, rpath, "row has no entries");
      if (row.size() != cols) fail(source, rpath, "row length differs from the first row");
      std::vector<UniPoly> entries;
      for (std::size_t j = 0; j < row.size(); ++j) {
        const std::string epath = rpath + "[" + std::to_string(j) + "]";
        UniPoly p = read_poly(row[j], source, epath);
        if (p.degree() > d) fail(source, epath, "degree exceeds d = " + std::to_string(d));
        degree = std::max(degree, p.degree());
        entries.push_back(std::move(p));
      }
      grid.push_back(std::move(entries));
    }
    if (k > 0 && layers.back().cols() != rows.size()) fail(source, lpath, "row count does not match previous layer");
    PolyMatrix<Fp> layer(rows.size(), cols);
    for (int j = 0; j <= degree; ++j) {
      FieldMatrix m(rows.size(), cols);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = grid[r][c].coefficient(static_cast<std::size_t>(j));
      }
      layer.set_coefficient(j, std::move(m));
    }
    layers.push_back(std::move(layer));
  }

  Roabp r(static_cast<int>(n), static_cast<int>(d), std::move(order), std::move(layers));
  if (static_cast<std::size_t>(w) != r.width()) {
    fail(source, "$.w", "declared width " + std::to_string(w) + " but layers have width " + std::to_string(r.width()));
  }
  if (auto it = doc.find("shape"); it != doc.end()) {
    if (!it->is_string() || it->get<std::string>() != to_string(r.shape())) {
      fail(source, "$.shape", "layers describe a " + to_string(r.shape()) + " program");
    }
  }
  return RoabpFile{static_cast<std::uint64_t>(modulus), std::move(r)};
}

RoabpFile read_roabp_file(const std::string& path) { return parse_roabp(read_file(path), path); }

std::string serialize(const Roabp& r) {
  std::ostringstream os;
  json order = json::array();
  for (int v : r.order()) order.push_back(v + 1);
  os << "{\n";
  os << "  \"modulus\": " << field().modulus() << ",\n";
  os << "  \"n\": " << r.num_vars() << ",\n";
  os << "  \"d\": " << r.degree_bound() << ",\n";
  os << "  \"w\": " << r.width() << ",\n";
  os << "  \"order\": " << order.dump() << ",\n";
  os << "  \"shape\": \"" << to_string(r.shape()) << "\",\n";
  os << "  \"layers\": [\n";
  for (std::size_t k = 0; k < r.layer_count(); ++k) {
    const auto& l = r.layers()[k];
    json rows = json::array();
    for (std::size_t i = 0; i < l.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < l.cols(); ++j) {
        std::vector<Fp> c;
        for (const auto& m : l.coefficients()) c.push_back(m(i, j));
        row.push_back(poly_json(UniPoly(std::move(c))));
      }
      rows.push_back(std::move(row));
    }
    os << "    " << rows.dump() << (k + 1 < r.layer_count() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

ShiftTuple parse_shift(std::string_view text, int n, std::string_view source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, "$", "expected an object");
  ShiftTuple f;
  if (auto it = doc.find("shift"); it != doc.end()) {
    const json& arr = array(*it, source, "$.shift");
    for (std::size_t i = 0; i < arr.size(); ++i) f.entries.push_back(read_poly(arr[i], source, "$.shift[" + std::to_string(i) + "]"));
  } else if (auto wt = doc.find("weights"); wt != doc.end()) {
    const json& arr = array(*wt, source, "$.weights");
    std::vector<int> w;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "$.weights[" + std::to_string(i) + "]";
      const std::int64_t v = integer(arr[i], source, path);
      if (v < 0 || v > 1'000'000) fail(source, path, "weight out of range");
      w.push_back(static_cast<int>(v));
    }
    f = ShiftTuple::monomial(w);
  } else {
    fail(source, "$", "expected a \"shift\" or \"weights\" member");
  }
  if (f.size() != static_cast<std::size_t>(n)) {
    fail(source, "$", "shift has " + std::to_string(f.size()) + " entries but n = " + std::to_string(n));
  }
  return f;
}

ShiftTuple read_shift_file(const std::string& path, int n) { return parse_shift(read_file(path), n, path); }

}  // namespace roabp
