#include "cavity/output.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

namespace cavity {

namespace {

double read_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out(kCsvHeader);
  out += '\n';
  const auto d = format_double;
  for (const TimeSeriesRow& row : trajectory.rows) {
    std::vector<Complex> slots(4);
    if (row.amps.size() == 4) {
      slots = row.amps;
    } else {
      slots[0] = row.amps.at(0);
      slots[3] = row.amps.at(1);
    }
    out += d(row.t);
    for (const Complex& c : slots) {
      out += ',' + d(c.real()) + ',' + d(c.imag());
    }
    out += ',' + d(row.norm) + ',' + d(row.concurrence) + ',' + d(row.trace_distance) + ',';
    if (row.x) out += d(*row.x);
    out += ',';
    if (row.p) out += d(*row.p);
    out += '\n';
  }
  return out;
}

std::vector<CsvRow> parse_trajectory_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw Error("csv header does not match the trajectory schema");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 14) throw Error("csv line " + std::to_string(line_no) + ": expected 14 fields");
    const auto num = [&](std::size_t i) { return read_double(f[i], line_no); };
    CsvRow row;
    row.t = num(0);
    row.c11 = {num(1), num(2)};
    row.c12 = {num(3), num(4)};
    row.c21 = {num(5), num(6)};
    row.c22 = {num(7), num(8)};
    row.norm = num(9);
    row.concurrence = num(10);
    row.trace_distance = num(11);
    if (!f[12].empty()) row.x = num(12);
    if (!f[13].empty()) row.p = num(13);
    rows.push_back(row);
  }
  if (line_no == 0) throw Error("empty csv");
  return rows;
}

std::vector<CsvRow> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trajectory_csv(buf.str());
}

std::string meta_text(const RunConfig& cfg) {
  std::string out = "# resolved parameters; this file is itself a valid run config\n";
  if (!cfg.note.empty()) {
    std::istringstream note(cfg.note);
    for (std::string line; std::getline(note, line);) out += "# " + line + '\n';
  }
  for (const auto& [key, value] : to_key_values(cfg)) out += key + " = " + value + '\n';
  return out;
}

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string trajectory_svg(const Trajectory& trajectory, const std::string& title) {
  constexpr double width = 800, height = 400, margin = 50;
  const double t_max = trajectory.rows.empty() ? 1.0 : std::max(trajectory.rows.back().t, 1e-12);
  const auto px = [&](double t) { return margin + (width - 2 * margin) * t / t_max; };
  const auto py = [&](double v) { return height - margin - (height - 2 * margin) * v; };
  const auto d = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::string concurrence, distance;
  for (const auto& row : trajectory.rows) {
    concurrence += d(px(row.t)) + ',' + d(py(row.concurrence)) + ' ';
    distance += d(px(row.t)) + ',' + d(py(row.trace_distance)) + ' ';
  }

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << margin << "\" y=\"30\" font-size=\"14\">" << xml_escape(title) << "</text>\n"
     << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << width - margin << "\" y2=\""
     << py(0) << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << margin << "\" y2=\"" << py(1)
     << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << width - margin << "\" y=\"" << height - 15 << "\" font-size=\"12\">t = "
     << d(t_max) << "</text>\n"
     << "<text x=\"10\" y=\"" << py(1) + 4 << "\" font-size=\"12\">1</text>\n"
     << "<polyline fill=\"none\" stroke=\"black\" points=\"" << concurrence << "\"/>\n"
     << "<polyline fill=\"none\" stroke=\"blue\" stroke-dasharray=\"6,3\" points=\"" << distance
     << "\"/>\n"
     << "<text x=\"" << width - 220 << "\" y=\"30\" font-size=\"12\">concurrence (solid)</text>\n"
     << "<text x=\"" << width - 220 << "\" y=\"45\" font-size=\"12\" fill=\"blue\">trace distance "
        "(dashed)</text>\n"
     << "</svg>\n";
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id();
  std::filesystem::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cavity
