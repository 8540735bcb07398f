#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ergw/arith.hpp"
#include "ergw/shift_model.hpp"

namespace ergw::io {

// floats printed with 17 significant digits, '.' decimal, no locale
std::string fmt(double v);
std::string fmt(std::complex<double> v);  // "re+imi" pair is emitted as two fields by callers

// table CSV: header "n,value,summatory", one row per 1..N
void write_table_csv(std::ostream& os, const arith::ArithmeticTable& t);

// compact binary cache keyed by (name, N, s)
void save_table(const std::string& path, const arith::ArithmeticTable& t);
arith::ArithmeticTable load_table(const std::string& path);

// cache wrapper honoring ERGW_CACHE_DIR (no caching when unset)
arith::ArithmeticTable sieve_cached(const std::string& name, std::int64_t n,
                                    std::optional<double> s = std::nullopt);
std::string cache_path(const std::string& dir, const std::string& name, std::int64_t n,
                       std::optional<double> s);

// lattice signals as JSON {"offset": o, "re": [...], "im": [...]}
std::string signal_to_json(const shift::LatticeSignal& g);
shift::LatticeSignal signal_from_json(const std::string& json);

}  // namespace ergw::io
