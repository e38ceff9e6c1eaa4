#include "qbell/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace qbell {

void SweepResult::add_meta(const std::string& key, double value) {
    metadata.emplace_back(key, format_double(value));
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, ptr);
}

namespace {

std::string cell_text(const Cell& cell) {
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& out) {
    for (const auto& [key, value] : result.metadata) {
        out << "# " << key << "=" << value << '\n';
    }
    for (size_t i = 0; i < result.header.size(); ++i) {
        if (i) out << ',';
        out << result.header[i];
    }
    out << '\n';
    for (const Row& row : result.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << cell_text(row[i]);
        }
        out << '\n';
    }
}

void write_json(const SweepResult& result, std::ostream& out) {
    nlohmann::json j;
    j["metadata"] = nlohmann::json::object();
    for (const auto& [key, value] : result.metadata) j["metadata"][key] = value;
    j["header"] = result.header;
    j["rows"] = nlohmann::json::array();
    for (const Row& row : result.rows) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const Cell& cell : row) {
            if (const auto* i = std::get_if<long long>(&cell)) {
                jrow.push_back(*i);
            } else if (const auto* d = std::get_if<double>(&cell)) {
                jrow.push_back(*d);
            } else {
                jrow.push_back(std::get<std::string>(cell));
            }
        }
        j["rows"].push_back(std::move(jrow));
    }
    out << j.dump() << '\n';
}

int sweep_thread_count() {
    const char* env = std::getenv("QBELL_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

void parallel_for_index(int n, const std::function<void(int)>& fn, int threads) {
    if (threads <= 0) threads = sweep_thread_count();
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next(0);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);  // drain remaining work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qbell
