#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qbell {

/// One CSV/JSON cell. Doubles serialize as shortest round-trip decimals.
using Cell = std::variant<long long, double, std::string>;
using Row = std::vector<Cell>;

/// Tabular sweep output plus ordered metadata echoed into every emission,
/// so each file is reproducible from its own contents.
struct SweepResult {
    std::vector<std::string> header;
    std::vector<Row> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_meta(const std::string& key, const std::string& value) {
        metadata.emplace_back(key, value);
    }
    void add_meta(const std::string& key, double value);
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Metadata as leading "# key=value" comment lines, then the header row,
/// then one line per row. UTF-8, '\n' endings, ',' separator.
void write_csv(const SweepResult& result, std::ostream& out);

/// Same content as a JSON envelope {"metadata":{...},"header":[...],"rows":[[...]]}.
void write_json(const SweepResult& result, std::ostream& out);

/// Worker count for sweep parallelism: QBELL_THREADS when set, else 1.
int sweep_thread_count();

/// Evaluates fn(i) for i in [0, n) on sweep_thread_count() workers (unless
/// `threads` overrides it); rows land in submission order via the index.
void parallel_for_index(int n, const std::function<void(int)>& fn, int threads = 0);

}  // namespace qbell
