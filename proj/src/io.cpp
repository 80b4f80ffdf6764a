#include "pwmotion/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pwmotion/errors.hpp"
#include "json.hpp"

namespace pwmotion {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// Artifacts come in pairs <base>.json / <base>.csv. Callers may pass the
// base with or without one of those extensions.
std::string strip_extension(const std::string& path) {
  for (const char* ext : {".json", ".csv"}) {
    const std::string e(ext);
    if (path.size() > e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0)
      return path.substr(0, path.size() - e.size());
  }
  return path;
}

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw SerializationError("cannot write " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SerializationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Floating-point fields are stored as format_double strings so emitted
// bytes do not depend on the JSON library's float printer.
json num(double v) { return json(format_double(v)); }

json parse_header(const std::string& path, const std::string& expected_kind) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw SerializationError(path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SerializationError(path + ": missing kind field");
  if (j["kind"].get<std::string>() != expected_kind)
    throw SerializationError(path + ": expected kind '" + expected_kind + "', got '" +
                             j["kind"].get<std::string>() + "'");
  return j;
}

double num_value(const json& v, const std::string& context) {
  try {
    if (v.is_string()) return std::stod(v.get<std::string>());
    if (v.is_number()) return v.get<double>();
  } catch (const std::exception&) {
  }
  throw SerializationError(context + " is not a number");
}

double get_num(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw SerializationError(path + ": missing field '" + key + "'");
  return num_value(j[key], path + ": field '" + key + "'");
}

int get_int(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw SerializationError(path + ": missing integer field '" + key + "'");
  return j[key].get<int>();
}

std::string csv_path_for(const json& j, const std::string& json_path) {
  if (!j.contains("csv") || !j["csv"].is_string())
    throw SerializationError(json_path + ": missing csv field");
  std::filesystem::path p(json_path);
  return (p.parent_path() / j["csv"].get<std::string>()).string();
}

struct CsvReader {
  std::ifstream in;
  std::string path;
  std::string line;
  std::size_t line_no = 0;

  CsvReader(const std::string& p, const std::string& expected_header) : in(p), path(p) {
    if (!in) throw SerializationError("cannot open " + p);
    if (!std::getline(in, line) || line != expected_header)
      throw SerializationError(p + ": expected header '" + expected_header + "'");
    line_no = 1;
  }

  bool next(std::vector<std::string>& fields) {
    if (!std::getline(in, line)) return false;
    ++line_no;
    fields.clear();
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SerializationError(path + ":" + std::to_string(line_no) + ": " + what);
  }

  long to_long(const std::string& s) const {
    try {
      std::size_t pos = 0;
      long v = std::stol(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail("bad integer '" + s + "'");
  }

  double to_double(const std::string& s) const {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail("bad number '" + s + "'");
  }
};

void emit_row(std::ostringstream& os, std::initializer_list<long> idx, cplx v) {
  for (long i : idx) os << i << ',';
  os << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

}  // namespace

void save_sampled_function(const SampledFunction& f, const std::string& base_path) {
  const std::string base = strip_extension(base_path);
  const GridSpec& g = f.grid();

  json j;
  j["kind"] = "sampled_function";
  j["dim"] = g.dim;
  j["n"] = g.n;
  j["half_width"] = num(g.half_width);
  j["support_radius"] = num(f.support_radius());
  j["csv"] = basename_of(base) + ".csv";
  write_text(base + ".json", j.dump(2) + "\n");

  std::ostringstream csv;
  csv << "i0,i1,i2,re,im\n";
  const int n = g.n;
  const int n1 = g.dim >= 2 ? n : 1;
  const int n2 = g.dim >= 3 ? n : 1;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i2 = 0; i2 < n2; ++i2)
        emit_row(csv, {i0, i1, i2}, f.at(i0, i1, i2));
  write_text(base + ".csv", csv.str());
}

SampledFunction load_sampled_function(const std::string& base_path) {
  const std::string base = strip_extension(base_path);
  const std::string jpath = base + ".json";
  json j = parse_header(jpath, "sampled_function");

  GridSpec g;
  g.dim = get_int(j, "dim", jpath);
  g.n = get_int(j, "n", jpath);
  g.half_width = get_num(j, "half_width", jpath);
  SampledFunction f(g, get_num(j, "support_radius", jpath));

  CsvReader csv(csv_path_for(j, jpath), "i0,i1,i2,re,im");
  std::vector<std::string> fields;
  std::size_t count = 0;
  while (csv.next(fields)) {
    if (fields.size() != 5) csv.fail("expected 5 columns");
    long i0 = csv.to_long(fields[0]);
    long i1 = csv.to_long(fields[1]);
    long i2 = csv.to_long(fields[2]);
    if (i0 < 0 || i0 >= g.n || i1 < 0 || (g.dim >= 2 ? i1 >= g.n : i1 != 0) ||
        i2 < 0 || (g.dim >= 3 ? i2 >= g.n : i2 != 0))
      csv.fail("index out of range");
    f.at(static_cast<int>(i0), static_cast<int>(i1), static_cast<int>(i2)) =
        cplx(csv.to_double(fields[3]), csv.to_double(fields[4]));
    ++count;
  }
  if (count != g.size()) csv.fail("row count does not match grid size");
  return f;
}

void save_spectrum(const Spectrum& F, const std::string& base_path) {
  const std::string base = strip_extension(base_path);

  json j;
  j["kind"] = "spectrum";
  j["dim"] = F.dim();
  j["n"] = F.points_per_axis();
  j["freq_step"] = num(F.freq_step());
  j["csv"] = basename_of(base) + ".csv";
  write_text(base + ".json", j.dump(2) + "\n");

  std::ostringstream csv;
  csv << "k0,k1,k2,re,im\n";
  const int n = F.points_per_axis();
  const int n1 = F.dim() >= 2 ? n : 1;
  const int n2 = F.dim() >= 3 ? n : 1;
  for (int k0 = 0; k0 < n; ++k0)
    for (int k1 = 0; k1 < n1; ++k1)
      for (int k2 = 0; k2 < n2; ++k2)
        emit_row(csv, {k0, k1, k2}, F.at(k0, k1, k2));
  write_text(base + ".csv", csv.str());
}

Spectrum load_spectrum(const std::string& base_path) {
  const std::string base = strip_extension(base_path);
  const std::string jpath = base + ".json";
  json j = parse_header(jpath, "spectrum");

  const int dim = get_int(j, "dim", jpath);
  const int n = get_int(j, "n", jpath);
  Spectrum F(dim, n, get_num(j, "freq_step", jpath));

  CsvReader csv(csv_path_for(j, jpath), "k0,k1,k2,re,im");
  std::vector<std::string> fields;
  std::size_t count = 0, expected = F.values().size();
  while (csv.next(fields)) {
    if (fields.size() != 5) csv.fail("expected 5 columns");
    long k0 = csv.to_long(fields[0]);
    long k1 = csv.to_long(fields[1]);
    long k2 = csv.to_long(fields[2]);
    if (k0 < 0 || k0 >= n || k1 < 0 || (dim >= 2 ? k1 >= n : k1 != 0) ||
        k2 < 0 || (dim >= 3 ? k2 >= n : k2 != 0))
      csv.fail("index out of range");
    F.at(static_cast<int>(k0), static_cast<int>(k1), static_cast<int>(k2)) =
        cplx(csv.to_double(fields[3]), csv.to_double(fields[4]));
    ++count;
  }
  if (count != expected) csv.fail("row count does not match spectrum size");
  return F;
}

void save_sinogram(const Sinogram& s, const std::string& base_path) {
  const std::string base = strip_extension(base_path);

  json j;
  j["kind"] = "sinogram";
  j["dim"] = s.dim;
  j["offset_step"] = num(s.offset_step);
  j["offset_count"] = static_cast<int>(s.offsets.size());
  json dirs = json::array();
  for (const auto& d : s.directions)
    dirs.push_back(json::array({num(d[0]), num(d[1]), num(d[2])}));
  j["directions"] = dirs;
  j["csv"] = basename_of(base) + ".csv";
  write_text(base + ".json", j.dump(2) + "\n");

  std::ostringstream csv;
  csv << "direction,offset,re,im\n";
  for (std::size_t d = 0; d < s.directions.size(); ++d)
    for (std::size_t k = 0; k < s.offsets.size(); ++k) {
      csv << d << ',' << format_double(s.offsets[k]) << ','
          << format_double(s.at(d, k).real()) << ','
          << format_double(s.at(d, k).imag()) << '\n';
    }
  write_text(base + ".csv", csv.str());
}

Sinogram load_sinogram(const std::string& base_path) {
  const std::string base = strip_extension(base_path);
  const std::string jpath = base + ".json";
  json j = parse_header(jpath, "sinogram");

  Sinogram s;
  s.dim = get_int(j, "dim", jpath);
  s.offset_step = get_num(j, "offset_step", jpath);
  if (!j.contains("directions") || !j["directions"].is_array())
    throw SerializationError(jpath + ": missing directions array");
  for (const json& d : j["directions"]) {
    if (!d.is_array() || d.size() != 3)
      throw SerializationError(jpath + ": direction entries need 3 components");
    std::array<double, 3> dir{};
    for (int c = 0; c < 3; ++c) dir[c] = num_value(d[c], jpath + ": direction component");
    s.directions.push_back(dir);
  }
  const auto offset_count = static_cast<std::size_t>(get_int(j, "offset_count", jpath));
  s.offsets.resize(offset_count);
  s.values.assign(s.directions.size() * offset_count, cplx(0.0, 0.0));

  CsvReader csv(csv_path_for(j, jpath), "direction,offset,re,im");
  std::vector<std::string> fields;
  std::size_t rows = 0;
  while (csv.next(fields)) {
    if (fields.size() != 4) csv.fail("expected 4 columns");
    long d = csv.to_long(fields[0]);
    if (d < 0 || d >= static_cast<long>(s.directions.size())) csv.fail("direction out of range");
    std::size_t k = rows % offset_count;
    if (rows / offset_count != static_cast<std::size_t>(d))
      csv.fail("rows must be grouped by direction in offset order");
    double offset = csv.to_double(fields[1]);
    if (d == 0)
      s.offsets[k] = offset;
    else if (offset != s.offsets[k])
      csv.fail("offset grid differs between directions");
    s.at(static_cast<std::size_t>(d), k) =
        cplx(csv.to_double(fields[2]), csv.to_double(fields[3]));
    ++rows;
  }
  if (rows != s.directions.size() * offset_count)
    csv.fail("row count does not match direction x offset counts");
  return s;
}

void save_motion_function(const MotionGroupFunction& f, const std::string& base_path) {
  const std::string base = strip_extension(base_path);
  const GridSpec& g = f.position_grid();

  json j;
  j["kind"] = "motion_function";
  j["n"] = g.n;
  j["half_width"] = num(g.half_width);
  j["angle_count"] = f.angle_count();
  j["support_radius"] = num(f.support_radius());
  j["csv"] = basename_of(base) + ".csv";
  write_text(base + ".json", j.dump(2) + "\n");

  std::ostringstream csv;
  csv << "i,j,l,re,im\n";
  for (int i = 0; i < g.n; ++i)
    for (int k = 0; k < g.n; ++k)
      for (int l = 0; l < f.angle_count(); ++l)
        emit_row(csv, {i, k, l}, f.at(i, k, l));
  write_text(base + ".csv", csv.str());
}

MotionGroupFunction load_motion_function(const std::string& base_path) {
  const std::string base = strip_extension(base_path);
  const std::string jpath = base + ".json";
  json j = parse_header(jpath, "motion_function");

  GridSpec g;
  g.dim = 2;
  g.n = get_int(j, "n", jpath);
  g.half_width = get_num(j, "half_width", jpath);
  const int angles = get_int(j, "angle_count", jpath);
  MotionGroupFunction f(g, angles, get_num(j, "support_radius", jpath));

  CsvReader csv(csv_path_for(j, jpath), "i,j,l,re,im");
  std::vector<std::string> fields;
  std::size_t count = 0;
  while (csv.next(fields)) {
    if (fields.size() != 5) csv.fail("expected 5 columns");
    long i = csv.to_long(fields[0]);
    long k = csv.to_long(fields[1]);
    long l = csv.to_long(fields[2]);
    if (i < 0 || i >= g.n || k < 0 || k >= g.n || l < 0 || l >= angles)
      csv.fail("index out of range");
    f.at(static_cast<int>(i), static_cast<int>(k), static_cast<int>(l)) =
        cplx(csv.to_double(fields[3]), csv.to_double(fields[4]));
    ++count;
  }
  if (count != f.values().size()) csv.fail("row count does not match function size");
  return f;
}

void save_group_matrix(const GroupFourierMatrix& m, const std::string& base_path) {
  const std::string base = strip_extension(base_path);

  json j;
  j["kind"] = "group_matrix";
  j["r"] = num(m.rep.r);
  j["band"] = m.band;
  j["hs_norm"] = num(m.hs_norm);
  j["csv"] = basename_of(base) + ".csv";
  write_text(base + ".json", j.dump(2) + "\n");

  std::ostringstream csv;
  csv << "m,m_prime,re,im\n";
  for (int m_in = -m.band; m_in <= m.band; ++m_in)
    for (int m_out = -m.band; m_out <= m.band; ++m_out)
      emit_row(csv, {m_in, m_out}, m.at(m_out, m_in));
  write_text(base + ".csv", csv.str());
}

GroupFourierMatrix load_group_matrix(const std::string& base_path) {
  const std::string base = strip_extension(base_path);
  const std::string jpath = base + ".json";
  json j = parse_header(jpath, "group_matrix");

  GroupFourierMatrix m;
  m.rep.r = get_num(j, "r", jpath);
  m.band = get_int(j, "band", jpath);
  if (m.band < 0) throw SerializationError(jpath + ": band must be >= 0");
  m.hs_norm = get_num(j, "hs_norm", jpath);
  m.entries.assign(static_cast<std::size_t>(m.side()) * m.side(), cplx(0.0, 0.0));

  CsvReader csv(csv_path_for(j, jpath), "m,m_prime,re,im");
  std::vector<std::string> fields;
  std::size_t count = 0;
  while (csv.next(fields)) {
    if (fields.size() != 4) csv.fail("expected 4 columns");
    long m_in = csv.to_long(fields[0]);
    long m_out = csv.to_long(fields[1]);
    if (m_in < -m.band || m_in > m.band || m_out < -m.band || m_out > m.band)
      csv.fail("mode index outside band");
    m.at(static_cast<int>(m_out), static_cast<int>(m_in)) =
        cplx(csv.to_double(fields[2]), csv.to_double(fields[3]));
    ++count;
  }
  if (count != m.entries.size()) csv.fail("row count does not match matrix size");
  return m;
}

}  // namespace pwmotion
