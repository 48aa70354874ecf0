#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qtheta/series.hpp"

namespace qtheta {

// On-disk series cache: one file per (k,n) holding all coefficients computed
// so far (monotone extension). Layout: a 3-line header
//     qtheta-series 1
//     <k> <n> <N> <checksum>
//     coefficients
// followed by N+1 newline-delimited decimal integers. The checksum is FNV-1a
// over the coefficient bytes; any mismatch or version skew is treated as a
// miss (recompute, never a partial read). Writes go through a temp file and
// an atomic rename.
class SeriesCache {
  public:
    explicit SeriesCache(std::filesystem::path dir);

    // Series of the reduced class (k,i) to order >= N, if present and intact.
    std::optional<IntSeries> load(long k, long i, long N) const;

    // Persist if it extends (or creates) the stored range.
    void store(long k, long i, const IntSeries& s) const;

    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
    std::filesystem::path file_for(long k, long i) const;
};

}  // namespace qtheta
