#include "qtheta/cache.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace qtheta {

namespace {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string coeff_payload(const IntSeries& s) {
    std::ostringstream os;
    for (const auto& c : s.coeffs) os << c.get_str() << '\n';
    return os.str();
}

}  // namespace

SeriesCache::SeriesCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
}

std::filesystem::path SeriesCache::file_for(long k, long i) const {
    return dir_ / ("gamma_k" + std::to_string(k) + "_n" + std::to_string(i) + ".txt");
}

std::optional<IntSeries> SeriesCache::load(long k, long i, long N) const {
    std::ifstream in(file_for(k, i));
    if (!in) return std::nullopt;
    std::string magic;
    int version = 0;
    long fk = 0, fi = 0, fN = -1;
    std::string checksum;
    in >> magic >> version >> fk >> fi >> fN >> checksum;
    std::string label;
    std::getline(in, label);  // rest of header line 2
    std::getline(in, label);  // "coefficients"
    if (!in || magic != "qtheta-series" || version != 1 || fk != k || fi != i || fN < N)
        return std::nullopt;
    IntSeries s;
    s.coeffs.reserve(static_cast<size_t>(fN + 1));
    std::string line;
    for (long m = 0; m <= fN; ++m) {
        if (!std::getline(in, line)) return std::nullopt;
        try {
            s.coeffs.emplace_back(line);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    std::ostringstream claimed;
    claimed << std::hex << fnv1a(coeff_payload(s));
    if (claimed.str() != checksum) return std::nullopt;  // corrupted: miss, caller recomputes
    return s;
}

void SeriesCache::store(long k, long i, const IntSeries& s) const {
    // Keep the longest series seen.
    if (auto existing = load(k, i, 0); existing && existing->order() >= s.order()) return;
    auto path = file_for(k, i);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return;
        std::string payload = coeff_payload(s);
        out << "qtheta-series 1\n"
            << k << ' ' << i << ' ' << s.order() << ' ' << std::hex << fnv1a(payload)
            << "\ncoefficients\n"
            << payload;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);  // atomic on POSIX
}

}  // namespace qtheta
