#include "partload/rawproc/calibrate.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>

#include "partload/errors.h"
#include "partload/rawproc/file_cache.h"
#include "partload/rawproc/reader.h"
#include "partload/rawproc/tokenizers.h"

namespace partload::rawproc {

namespace {

using Clock = std::chrono::steady_clock;

// Seconds for one call of fn. Stages are timed one pass at a time, interleaved
// across attributes as the runner executes them; back-to-back loops over one
// column would time a warm best case. Each pass is a sample average and the
// median pass is kept, which discards passes hit by preemption.
template <typename F>
double time_once(F&& fn) {
  const auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Least squares for y ~ X b with a small dense normal system; returns false
// when the system is singular.
template <std::size_t K>
bool least_squares(const std::vector<std::array<double, K>>& x, const std::vector<double>& y,
                   std::array<double, K>& beta) {
  std::array<std::array<double, K + 1>, K> a{};
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t i = 0; i < K; ++i) {
      for (std::size_t j = 0; j < K; ++j) a[i][j] += x[r][i] * x[r][j];
      a[i][K] += x[r][i] * y[r];
    }
  }
  double scale = 0;
  for (std::size_t i = 0; i < K; ++i) scale = std::max(scale, std::abs(a[i][i]));
  for (std::size_t c = 0; c < K; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < K; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) <= 1e-10 * scale) return false;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < K; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= K; ++k) a[r][k] -= f * a[c][k];
    }
  }
  for (std::size_t i = 0; i < K; ++i) beta[i] = a[i][K] / a[i][i];
  return true;
}

double measure_bandwidth(const RawFormat& format, const std::string& path, const RawSchema& schema,
                         const CalibrationOptions& options) {
  std::vector<double> rates;
  for (unsigned r = 0; r < std::max(3u, options.repetitions / 2 + 1); ++r) {
    evict_file(path);
    RawReader reader(format, path, schema.size() * 8, 4u << 20);
    std::vector<char> buffer;
    std::vector<std::string_view> records;
    const auto t0 = Clock::now();
    while (reader.bytes_read() < options.bandwidth_bytes && reader.next(buffer, records)) {
    }
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (dt <= 0) fail(ErrorKind::kCalibration, "clock too coarse to time the bandwidth read");
    rates.push_back(static_cast<double>(reader.bytes_read()) / dt);
  }
  std::sort(rates.begin(), rates.end());
  return rates[rates.size() / 2];
}

}  // namespace

Calibration calibrate(const RawFormat& format, const std::string& path,
                      const CalibrationOptions& options) {
  if (options.sample_rows < 1000) {
    fail(ErrorKind::kInvalidInput, "calibration needs at least 1000 sample rows");
  }
  if (!std::filesystem::exists(path)) fail(ErrorKind::kIo, "sample not found: " + path);
  if (std::chrono::duration<double>(Clock::duration(1)).count() > 1e-6) {
    fail(ErrorKind::kCalibration, "steady clock resolution is coarser than 1 microsecond");
  }

  Calibration cal;
  cal.schema = detect_schema(format, path);
  const std::size_t n = cal.schema.size();
  const std::vector<std::string> sample = read_leading_records(format, path, cal.schema, options.sample_rows);
  if (sample.size() < 1000) {
    fail(ErrorKind::kInvalidInput, "sample has fewer than 1000 records; enlarge the sample");
  }
  const double rows = static_cast<double>(sample.size());
  double sample_bytes = 0;
  Batch batch;
  for (const std::string& s : sample) {
    batch.records.emplace_back(s);
    sample_bytes += static_cast<double>(s.size()) + (format.kind == FormatKind::kFixedBinary ? 0 : 1);
  }
  cal.sample_record_bytes = sample_bytes / rows;

  CostParams& p = cal.params;
  p.tokenization_mode = tokenization_mode_of(format.kind);
  for (std::size_t k = 0; k < n; ++k) {
    p.attributes.push_back({static_cast<int>(k), cal.schema.columns[k].name, 8.0, 0.0, 0.0});
  }

  const JsonKeyIndex keys(cal.schema);
  const unsigned reps = std::max(1u, options.repetitions);
  std::vector<double> t_tok(n, 0.0);
  if (format.kind == FormatKind::kCsv) {
    // Mean field widths, then tokenize time at a spread of prefix endpoints.
    tokenize_csv(batch, format.delimiter, static_cast<int>(n) - 1);
    std::vector<double> width(n, 0.0);
    for (std::size_t r = 0; r < sample.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) width[j] += static_cast<double>(batch.field(r, j).size()) + 1;
    for (double& w : width) w /= rows;

    std::vector<int> ends;
    const std::size_t points = std::min<std::size_t>(n, 24);
    for (std::size_t k = 0; k < points; ++k) {
      const auto e = static_cast<int>(points == 1 ? n - 1 : k * (n - 1) / (points - 1));
      if (ends.empty() || ends.back() != e) ends.push_back(e);
    }
    std::vector<std::array<double, 3>> x3;
    std::vector<std::array<double, 2>> x2;
    std::vector<std::vector<double>> passes(ends.size());
    Batch b;
    b.records = batch.records;
    for (unsigned r = 0; r < reps; ++r) {
      for (std::size_t k = 0; k < ends.size(); ++k) {
        passes[k].push_back(time_once([&] { tokenize_csv(b, format.delimiter, ends[k]); }));
      }
    }
    std::vector<double> y(ends.size());
    for (std::size_t k = 0; k < ends.size(); ++k) {
      y[k] = median(passes[k]) / rows;
      double bytes = 0;
      for (int c = 0; c <= ends[k]; ++c) bytes += width[static_cast<std::size_t>(c)];
      x3.push_back({1.0, static_cast<double>(ends[k] + 1), bytes});
      x2.push_back({1.0, bytes});
    }
    std::array<double, 3> b3{};
    std::array<double, 2> b2{};
    bool fitted = false;
    if (ends.size() >= 3 && least_squares(x3, y, b3)) {
      for (std::size_t j = 0; j < n; ++j) t_tok[j] = b3[1] + b3[2] * width[j];
      t_tok[0] += b3[0];
      fitted = std::all_of(t_tok.begin(), t_tok.end(), [](double v) { return v >= 0; });
    }
    if (!fitted && ends.size() >= 2 && least_squares(x2, y, b2)) {
      for (std::size_t j = 0; j < n; ++j) t_tok[j] = b2[1] * width[j];
      t_tok[0] += b2[0];
      fitted = std::all_of(t_tok.begin(), t_tok.end(), [](double v) { return v >= 0; });
    }
    if (!fitted) {
      // Spread the full-record time in proportion to field widths.
      double total_width = 0;
      for (double w : width) total_width += w;
      for (std::size_t j = 0; j < n; ++j) t_tok[j] = y.back() * width[j] / total_width;
    }
    // The first endpoint is a direct measurement of the first field, which is
    // steadier than the fitted intercept.
    if (ends.front() == 0) t_tok[0] = y.front();
    for (double& v : t_tok) v = std::max(v, 0.0);
  } else if (format.kind == FormatKind::kJsonLines) {
    Batch b;
    b.records = batch.records;
    std::vector<double> passes;
    for (unsigned r = 0; r < reps; ++r) passes.push_back(time_once([&] { tokenize_json(b, keys); }));
    const double t = median(passes) / rows;
    std::fill(t_tok.begin(), t_tok.end(), t / static_cast<double>(n));
    tokenize_json(batch, keys);
  }

  std::vector<std::uint64_t> out(sample.size());
  std::vector<std::vector<double>> parse_passes(n);
  for (unsigned r = 0; r < reps; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<int>(j);
      const ValueType type = cal.schema.columns[j].type;
      parse_passes[j].push_back(time_once([&] { parse_column(batch, format.kind, jj, type, out.data()); }));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    p.attributes[j].t_tok = t_tok[j];
    p.attributes[j].t_parse = median(parse_passes[j]) / rows;
  }

  const std::uint64_t size = file_size(path);
  p.raw_size = static_cast<double>(options.raw_size ? options.raw_size : size);
  if (options.row_count) {
    p.row_count = options.row_count;
  } else if (std::filesystem::exists(manifest_path(path))) {
    p.row_count = read_manifest(path).rows;
  } else {
    p.row_count = static_cast<std::uint64_t>(std::llround(p.raw_size / cal.sample_record_bytes));
  }
  if (p.row_count == 0) fail(ErrorKind::kInvalidInput, "row count is zero");
  if (format.kind == FormatKind::kFixedBinary && format.startup_sec_per_attr > 0) {
    for (Attribute& a : p.attributes) a.t_parse += format.startup_sec_per_attr / static_cast<double>(p.row_count);
  }
  p.bandwidth = measure_bandwidth(format, path, cal.schema, options);
  validate(p);
  return cal;
}

}  // namespace partload::rawproc
