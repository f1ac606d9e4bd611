#include "partload/rawproc/runner.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <bit>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstring>
#include <deque>
#include <filesystem>
#include <mutex>
#include <optional>
#include <thread>

#include "partload/cost.h"
#include "partload/errors.h"
#include "partload/rawproc/file_cache.h"
#include "partload/rawproc/reader.h"
#include "partload/rawproc/tokenizers.h"

namespace partload::rawproc {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

  void push(T item) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_; });
    items_.push_back(std::move(item));
    not_empty_.notify_one();
  }
  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }
  std::optional<T> pop() {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

 private:
  std::size_t capacity_;
  std::mutex mu_;
  std::condition_variable not_full_, not_empty_;
  std::deque<T> items_;
  bool closed_ = false;
};

// What one raw pass extracts.
struct ScanSpec {
  bool tokenize = false;
  int tokenize_end = -1;  // csv prefix end
  std::vector<int> parse;
};

class Extraction {
 public:
  Extraction(const RawFormat& format, const RawSchema& schema)
      : format_(format), schema_(schema), keys_(schema) {}

  void tokenize(Batch& b, const ScanSpec& spec) const {
    if (!spec.tokenize) return;
    if (format_.kind == FormatKind::kCsv) {
      tokenize_csv(b, format_.delimiter, spec.tokenize_end);
    } else if (format_.kind == FormatKind::kJsonLines) {
      tokenize_json(b, keys_);
    }
  }

  void parse(const Batch& b, int j, std::uint64_t* out) const {
    parse_column(b, format_.kind, j, schema_.columns[static_cast<std::size_t>(j)].type, out);
  }

  FormatKind kind() const { return format_.kind; }

 private:
  RawFormat format_;
  const RawSchema& schema_;
  JsonKeyIndex keys_;
};

class Runner {
 public:
  Runner(const RawFormat& format, const std::string& raw_path, const RawSchema& schema,
         const CostParams& params, const RunOptions& options)
      : format_(format),
        raw_path_(raw_path),
        schema_(schema),
        params_(params),
        options_(options),
        extraction_(format, schema) {}

  bool caches_dropped() const { return caches_dropped_; }

  void drop(const std::string& path) {
    if (!options_.drop_caches) return;
    if (!evict_file(path)) caches_dropped_ = false;
  }

  Measurement load(const AttributeSet& loaded) {
    Measurement m;
    m.query_id = "load";
    if (loaded.empty()) return m;
    drop(raw_path_);
    const auto t0 = Clock::now();
    ScanSpec spec;
    spec.tokenize = true;
    spec.tokenize_end = loaded.max_index();
    spec.parse = loaded.indices();
    if (params_.tokenization_mode != TokenizationMode::kPrefix) spec.tokenize_end = last_index();
    std::vector<std::vector<std::uint64_t>> columns(spec.parse.size());
    for (auto& c : columns) c.reserve(params_.row_count);
    serial_scan(spec, m, [&](std::size_t k, const std::uint64_t* v, std::size_t n) {
      columns[k].insert(columns[k].end(), v, v + n);
    });
    const auto tw = Clock::now();
    for (std::size_t k = 0; k < spec.parse.size(); ++k) {
      write_column(column_file(spec.parse[k]), columns[k]);
    }
    m.write = since(tw);
    m.wall = since(t0);
    for (int j : spec.parse) drop(column_file(j));
    return m;
  }

  Measurement query(const Query& q, const QueryPlan& plan, const AttributeSet& loaded,
                    std::uint64_t& checksum) {
    drop(raw_path_);
    loaded.for_each([&](int j) { drop(column_file(j)); });
    Measurement m;
    m.query_id = q.id;
    checksum = 0;
    const auto t0 = Clock::now();
    plan.read_loaded.for_each([&](int j) {
      const auto tr = Clock::now();
      for (std::uint64_t w : read_column(column_file(j))) checksum += w;
      m.loaded_read += since(tr);
    });
    if (plan.reads_raw) {
      ScanSpec spec;
      spec.tokenize = params_.tokenization_mode != TokenizationMode::kNone;
      spec.tokenize_end = plan.tokenized.max_index();
      spec.parse = plan.parsed.indices();
      auto sink = [&](std::size_t, const std::uint64_t* v, std::size_t n) {
        for (std::size_t r = 0; r < n; ++r) checksum += v[r];
      };
      if (options_.mode == EvalMode::kPipelined) {
        pipelined_scan(spec, m, checksum);
      } else {
        serial_scan(spec, m, sink);
      }
    }
    m.wall = since(t0);
    return m;
  }

 private:
  int last_index() const { return static_cast<int>(schema_.size()) - 1; }
  std::string column_file(int j) const {
    return column_path(options_.dataset_dir, schema_.columns[static_cast<std::size_t>(j)].name);
  }
  std::size_t record_bytes() const { return schema_.size() * 8; }

  template <typename Sink>
  void serial_scan(const ScanSpec& spec, Measurement& m, Sink&& sink) {
    RawReader reader(format_, raw_path_, record_bytes(), options_.chunk_bytes);
    std::vector<char> buffer;
    Batch batch;
    std::vector<std::uint64_t> values;
    for (;;) {
      auto t = Clock::now();
      const bool more = reader.next(buffer, batch.records);
      m.read += since(t);
      if (!more) break;
      t = Clock::now();
      extraction_.tokenize(batch, spec);
      m.tokenize += since(t);
      t = Clock::now();
      values.resize(batch.records.size());
      for (std::size_t k = 0; k < spec.parse.size(); ++k) {
        extraction_.parse(batch, spec.parse[k], values.data());
        sink(k, values.data(), values.size());
      }
      m.parse += since(t);
    }
  }

  struct Chunk {
    std::vector<char> buffer;
    Batch batch;
  };

  void pipelined_scan(const ScanSpec& spec, Measurement& m, std::uint64_t& checksum) {
    unsigned consumers = options_.consumers;
    if (consumers == 0) consumers = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t depth = std::max<std::size_t>(options_.queue_depth, 1);
    BoundedQueue<Chunk> queue(depth);
    // Chunks circulate between the reader and the consumers so buffers are
    // reused as in the serial scan.
    const std::size_t pool_size = depth + consumers + 1;
    BoundedQueue<Chunk> spare(pool_size);
    for (std::size_t k = 0; k < pool_size; ++k) spare.push(Chunk{});

    struct Local {
      double tokenize = 0, parse = 0;
      std::uint64_t sum = 0;
    };
    std::vector<Local> locals(consumers);
    std::exception_ptr failure;
    std::mutex failure_mu;

    std::vector<std::thread> pool;
    for (unsigned c = 0; c < consumers; ++c) {
      pool.emplace_back([&, c] {
        Local& l = locals[c];
        std::vector<std::uint64_t> values;
        while (auto chunk = queue.pop()) {
          try {
            auto t = Clock::now();
            extraction_.tokenize(chunk->batch, spec);
            l.tokenize += since(t);
            t = Clock::now();
            values.resize(chunk->batch.records.size());
            for (int j : spec.parse) {
              extraction_.parse(chunk->batch, j, values.data());
              for (std::uint64_t v : values) l.sum += v;
            }
            l.parse += since(t);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
          spare.push(std::move(*chunk));
        }
      });
    }

    try {
      RawReader reader(format_, raw_path_, record_bytes(), options_.chunk_bytes);
      for (;;) {
        Chunk chunk = std::move(*spare.pop());
        const auto t = Clock::now();
        const bool more = reader.next(chunk.buffer, chunk.batch.records);
        m.read += since(t);
        if (!more) break;
        queue.push(std::move(chunk));
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
    queue.close();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    for (const Local& l : locals) {
      m.tokenize += l.tokenize;
      m.parse += l.parse;
      checksum += l.sum;
    }
  }

  static void write_column(const std::string& path, const std::vector<std::uint64_t>& words) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) fail(ErrorKind::kIo, "cannot create " + path);
    const std::vector<std::uint64_t>* src = &words;
    std::vector<std::uint64_t> swapped;
    if constexpr (std::endian::native == std::endian::big) {
      swapped = words;
      for (std::uint64_t& w : swapped) w = __builtin_bswap64(w);
      src = &swapped;
    }
    const auto* bytes = reinterpret_cast<const char*>(src->data());
    const std::size_t size = src->size() * 8;
    std::size_t done = 0;
    while (done < size) {
      const ssize_t n = ::write(fd, bytes + done, size - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        fail(ErrorKind::kIo, "write failed: " + path);
      }
      done += static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0 || ::close(fd) != 0) fail(ErrorKind::kIo, "sync failed: " + path);
  }

  RawFormat format_;
  std::string raw_path_;
  const RawSchema& schema_;
  const CostParams& params_;
  RunOptions options_;
  Extraction extraction_;
  bool caches_dropped_ = true;
};

void add(Measurement& acc, const Measurement& m) {
  acc.wall += m.wall;
  acc.read += m.read;
  acc.tokenize += m.tokenize;
  acc.parse += m.parse;
  acc.loaded_read += m.loaded_read;
  acc.write += m.write;
}

void scale(Measurement& m, double f) {
  m.wall *= f;
  m.read *= f;
  m.tokenize *= f;
  m.parse *= f;
  m.loaded_read *= f;
  m.write *= f;
}

}  // namespace

std::string column_path(const std::string& dataset_dir, const std::string& name) {
  return (std::filesystem::path(dataset_dir) / (name + ".col")).string();
}

std::vector<std::uint64_t> read_column(const std::string& path) {
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) fail(ErrorKind::kIo, "cannot open " + path);
  struct stat st {};
  ::fstat(fd, &st);
  const auto size = static_cast<std::size_t>(st.st_size);
  if (size % 8 != 0) {
    ::close(fd);
    fail(ErrorKind::kIo, "short column file " + path);
  }
  // Column files are little-endian words; read them in place.
  std::vector<std::uint64_t> words(size / 8);
  auto* dst = reinterpret_cast<char*>(words.data());
  std::size_t have = 0;
  while (have < size) {
    const ssize_t n = ::read(fd, dst + have, size - have);
    if (n <= 0) {
      if (n < 0 && errno == EINTR) continue;
      break;
    }
    have += static_cast<std::size_t>(n);
  }
  ::close(fd);
  if (have != size) fail(ErrorKind::kIo, "short column file " + path);
  if constexpr (std::endian::native == std::endian::big) {
    for (std::uint64_t& w : words) w = __builtin_bswap64(w);
  }
  return words;
}

RunResult run_workload(const RawFormat& format, const std::string& raw_path,
                       const RawSchema& schema, const CostParams& params,
                       const Workload& workload, const AttributeSet& loaded,
                       const RunOptions& options) {
  if (schema.size() != params.num_attributes()) {
    fail(ErrorKind::kInvalidInput, "raw schema and cost parameters differ in attribute count");
  }
  if (params.tokenization_mode != tokenization_mode_of(format.kind)) {
    fail(ErrorKind::kInvalidInput, "cost parameters do not match the raw format's tokenization");
  }
  if (options.mode == EvalMode::kPipelined && params.tokenization_mode == TokenizationMode::kPrefix) {
    fail(ErrorKind::kModeUnsupported, "pipelined execution needs atomic or none tokenization");
  }
  if (options.repetitions == 0) fail(ErrorKind::kInvalidInput, "repetitions must be positive");
  std::filesystem::create_directories(options.dataset_dir);

  const CostModel model(params);
  std::vector<QueryPlan> plans;
  for (const Query& q : workload.queries) plans.push_back(derive_query_plan(model, loaded, q));

  Runner runner(format, raw_path, schema, params, options);
  RunResult result;
  result.queries.resize(workload.queries.size());
  result.checksums.assign(workload.queries.size(), 0);
  for (unsigned rep = 0; rep < options.repetitions; ++rep) {
    add(result.load, runner.load(loaded));
    for (std::size_t i = 0; i < workload.queries.size(); ++i) {
      std::uint64_t sum = 0;
      const Measurement m = runner.query(workload.queries[i], plans[i], loaded, sum);
      result.queries[i].query_id = m.query_id;
      add(result.queries[i], m);
      result.checksums[i] = sum;
    }
  }
  const double f = 1.0 / options.repetitions;
  result.load.query_id = "load";
  scale(result.load, f);
  for (Measurement& m : result.queries) scale(m, f);
  result.caches_dropped = runner.caches_dropped();
  if (options.drop_caches && !result.caches_dropped) {
    result.warnings.push_back("page cache eviction could not be verified; timings may include cached reads");
  }
  return result;
}

std::string measurements_to_csv(const RunResult& result, EvalMode mode) {
  std::string out = "query_id,mode,wall_sec,read_sec,tok_sec,parse_sec,loadedread_sec,write_sec\n";
  char line[256];
  auto row = [&](const Measurement& m) {
    std::snprintf(line, sizeof(line), ",%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                  std::string(to_string(mode)).c_str(), m.wall, m.read, m.tokenize, m.parse,
                  m.loaded_read, m.write);
    out += m.query_id;
    out += line;
  };
  row(result.load);
  for (const Measurement& m : result.queries) row(m);
  return out;
}

std::vector<double> measured_cumulative(const RunResult& result) {
  std::vector<double> out;
  double c = result.load.wall;
  out.push_back(c);
  for (const Measurement& m : result.queries) {
    c += m.wall;
    out.push_back(c);
  }
  return out;
}

std::string comparison_csv(const std::vector<double>& predicted_cumulative,
                           const RunResult& result) {
  const std::vector<double> measured = measured_cumulative(result);
  std::string out = "query_index,predicted_cumulative_sec,measured_cumulative_sec\n";
  char line[96];
  for (std::size_t i = 0; i < measured.size() && i < predicted_cumulative.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.9g,%.9g\n", i, predicted_cumulative[i], measured[i]);
    out += line;
  }
  return out;
}

}  // namespace partload::rawproc
