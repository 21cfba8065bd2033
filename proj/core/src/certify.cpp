#include "quadring/certify.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "quadring/format.hpp"

namespace quadring {

namespace {

using ordered_json = nlohmann::ordered_json;

} // namespace

const char* cert_status_name(CertStatus s) noexcept {
    return s == CertStatus::certified_pid ? "CertifiedPID" : "Inconclusive";
}

const char* corollary_path_name(CorollaryPath p) noexcept {
    return p == CorollaryPath::imaginary_all_inert ? "ImaginaryAllInert" : "GeneralTable";
}

Certificate pid_certify(long long m, const SearchLimits& limits) {
    Certificate cert;
    cert.field = field_params(m);
    cert.witness_table = build_prime_table(cert.field, limits);
    bool complete = cert.witness_table.complete();
    cert.status = complete ? CertStatus::certified_pid : CertStatus::inconclusive;
    cert.corollary_path = (m < 0 && cert.witness_table.required.empty())
                              ? CorollaryPath::imaginary_all_inert
                              : CorollaryPath::general_table;
    if (!complete) cert.failing_prime = cert.witness_table.first_missing();
    return cert;
}

std::vector<Certificate> certify_range(long long lo, long long hi,
                                       const SearchLimits& limits, int jobs) {
    std::vector<long long> ms;
    for (long long m = lo; m <= hi; ++m) {
        if (m == 0 || m == 1 || !is_squarefree(m)) continue;
        ms.push_back(m);
    }
    std::vector<Certificate> out(ms.size());
    if (jobs <= 1 || ms.size() <= 1) {
        for (size_t i = 0; i < ms.size(); ++i) out[i] = pid_certify(ms[i], limits);
        return out;
    }

    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_lock;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ms.size()) return;
            try {
                out[i] = pid_certify(ms[i], limits);
            } catch (...) {
                std::lock_guard<std::mutex> hold(error_lock);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    size_t n_threads = std::min<size_t>(static_cast<size_t>(jobs), ms.size());
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

std::string to_json(const Certificate& cert) {
    ordered_json j;
    j["m"] = cert.field.m;
    j["delta"] = cert.field.delta;
    j["status"] = cert_status_name(cert.status);
    j["corollary_path"] = corollary_path_name(cert.corollary_path);
    j["required"] = cert.witness_table.required;
    ordered_json entries = ordered_json::object();
    for (const auto& [p, pi] : cert.witness_table.entries)
        entries[std::to_string(p)] = render(pi);
    j["entries"] = std::move(entries);
    if (cert.failing_prime)
        j["failing_prime"] = *cert.failing_prime;
    else
        j["failing_prime"] = nullptr;
    return j.dump(2);
}

} // namespace quadring
