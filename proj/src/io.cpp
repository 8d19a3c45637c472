#include "crowdfx/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <string_view>

namespace crowdfx {

ParseError::ParseError(const std::filesystem::path& path, std::size_t line, const std::string& what)
    : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

/// Line-oriented CSV reader with a mandatory header row.
class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path, std::vector<std::string_view> header)
      : path_(path), in_(path), width_(header.size()) {
    if (!in_) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string line;
    if (!next_line(line)) throw ParseError(path_, 1, "missing header");
    std::string_view text = line;
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (split(text) != header) {
      std::string expected;
      for (auto h : header) expected += (expected.empty() ? "" : ",") + std::string(h);
      throw ParseError(path_, line_no_, "expected header '" + expected + "'");
    }
  }

  /// Next non-blank row; false at end of file.
  bool next(std::vector<std::string_view>& fields) {
    while (next_line(buffer_)) {
      if (trim(buffer_).empty()) continue;
      fields = split(buffer_);
      if (fields.size() != width_) {
        fail("expected " + std::to_string(width_) + " fields, found " +
             std::to_string(fields.size()));
      }
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_, line_no_, what); }

  double number(std::string_view text) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
      fail("not a number: '" + std::string(text) + "'");
    }
    return v;
  }

  Date date(std::string_view text) const {
    try {
      return parse_date(text);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  Timestamp timestamp(std::string_view text) const {
    try {
      return parse_timestamp(text);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  double probability(std::string_view text) const {
    const double p = number(text);
    if (!(p >= 0.0 && p <= 1.0)) fail("probability outside [0, 1]: '" + std::string(text) + "'");
    return p;
  }

 private:
  bool next_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    return true;
  }

  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t width_;
  std::size_t line_no_ = 0;
  std::string buffer_;
};

void sort_by_date(std::vector<ForecastPoint>& points) {
  std::sort(points.begin(), points.end(),
            [](const ForecastPoint& a, const ForecastPoint& b) { return a.date < b.date; });
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

PriceSeries ingest_price_csv(const std::filesystem::path& path, const std::string& pair_id,
                             QuoteDirection direction) {
  CsvReader csv(path, {"date", "rate"});
  std::vector<PricePoint> points;
  std::map<Date, std::size_t> line_of;
  std::vector<std::string_view> f;
  while (csv.next(f)) {
    const Date d = csv.date(f[0]);
    const double rate = csv.number(f[1]);
    if (!(rate > 0.0)) csv.fail("rate must be positive, got '" + std::string(f[1]) + "'");
    auto [it, inserted] = line_of.emplace(d, csv.line());
    if (!inserted) {
      csv.fail("duplicate date " + format_date(d) + " (first seen on line " +
               std::to_string(it->second) + ")");
    }
    points.push_back({d, rate});
  }
  std::sort(points.begin(), points.end(),
            [](const PricePoint& a, const PricePoint& b) { return a.date < b.date; });
  return PriceSeries(pair_id, std::move(points), direction);
}

std::vector<CrowdRecord> read_crowd_csv(const std::filesystem::path& path) {
  CsvReader csv(path, {"question_id", "forecaster_id", "timestamp_rfc3339", "probability"});
  std::vector<CrowdRecord> records;
  std::vector<std::string_view> f;
  while (csv.next(f)) {
    if (f[0].empty()) csv.fail("empty question_id");
    if (f[1].empty()) csv.fail("empty forecaster_id");
    records.push_back({std::string(f[0]), std::string(f[1]), csv.timestamp(f[2]),
                       csv.probability(f[3])});
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const CrowdRecord& a, const CrowdRecord& b) { return a.at < b.at; });
  return records;
}

ForecastSeries read_forecast_csv(const std::filesystem::path& path, const std::string& question_id,
                                 Source source) {
  CsvReader csv(path, {"date", "p"});
  ForecastSeries out{question_id, source, {}};
  std::set<Date> seen;
  std::vector<std::string_view> f;
  while (csv.next(f)) {
    const Date d = csv.date(f[0]);
    if (!seen.insert(d).second) csv.fail("duplicate date " + format_date(d));
    out.points.push_back({d, csv.probability(f[1])});
  }
  sort_by_date(out.points);
  return out;
}

std::map<std::string, ForecastSeries> read_consensus_csv(const std::filesystem::path& path,
                                                         Source source) {
  CsvReader csv(path, {"question_id", "date", "probability"});
  std::map<std::string, ForecastSeries> out;
  std::set<std::pair<std::string, Date>> seen;
  std::vector<std::string_view> f;
  while (csv.next(f)) {
    if (f[0].empty()) csv.fail("empty question_id");
    const std::string id(f[0]);
    const Date d = csv.date(f[1]);
    if (!seen.emplace(id, d).second) {
      csv.fail("duplicate (question, date) " + id + " " + format_date(d));
    }
    auto [it, inserted] = out.try_emplace(id, ForecastSeries{id, source, {}});
    it->second.points.push_back({d, csv.probability(f[2])});
  }
  for (auto& [id, series] : out) sort_by_date(series.points);
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // avoid "-0.000000"
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

void write_forecast_csv(const std::filesystem::path& path, const ForecastSeries& series) {
  auto out = open_out(path);
  out << "date,p\n";
  for (const auto& pt : series.points) out << format_date(pt.date) << ',' << fixed6(pt.p) << '\n';
  finish(out, path);
}

void write_score_csv(const std::filesystem::path& path, const ScoreSeries& series) {
  auto out = open_out(path);
  out << "date,score\n";
  for (const auto& pt : series.points) {
    out << format_date(pt.date) << ',' << fixed6(pt.score) << '\n';
  }
  finish(out, path);
}

void write_mean_curve_csv(const std::filesystem::path& path, const MeanScoreCurve& curve) {
  auto out = open_out(path);
  out << "date,mean_score,n_open\n";
  for (const auto& pt : curve.points) {
    out << format_date(pt.date) << ',' << fixed6(pt.mean_score) << ',' << pt.n_open << '\n';
  }
  finish(out, path);
}

}  // namespace crowdfx
