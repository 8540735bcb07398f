#include "ergw/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "ergw/errors.hpp"

namespace ergw::io {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(std::complex<double> v) { return fmt(v.real()) + "," + fmt(v.imag()); }

void write_table_csv(std::ostream& os, const arith::ArithmeticTable& t) {
    os << "n,value,summatory\n";
    for (std::int64_t k = 1; k <= t.size(); ++k) {
        if (t.is_integer())
            os << k << ',' << t.ivalue(k) << ',' << static_cast<std::int64_t>(t.summatory(k))
               << '\n';
        else
            os << k << ',' << fmt(t.value(k)) << ',' << fmt(t.summatory(k)) << '\n';
    }
}

namespace {
constexpr char kMagic[4] = {'E', 'G', 'W', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
}  // namespace

void save_table(const std::string& path, const arith::ArithmeticTable& t) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ResourceError("cannot open cache file " + path);
    os.write(kMagic, 4);
    put(os, kVersion);
    put<std::uint8_t>(os, t.is_integer() ? 0 : 1);
    put<std::uint8_t>(os, t.param().has_value() ? 1 : 0);
    put<double>(os, t.param().value_or(0.0));
    put<std::int64_t>(os, t.size());
    const auto& name = t.name();
    put<std::uint16_t>(os, static_cast<std::uint16_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    if (t.is_integer())
        os.write(reinterpret_cast<const char*>(t.integer_values().data()),
                 static_cast<std::streamsize>(t.size() * 8));
    else
        os.write(reinterpret_cast<const char*>(t.real_values().data()),
                 static_cast<std::streamsize>(t.size() * 8));
    if (!os) throw ResourceError("write failed on " + path);
}

arith::ArithmeticTable load_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ResourceError("cannot open cache file " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw ParameterError("bad cache magic in " + path);
    if (get<std::uint32_t>(is) != kVersion) throw ParameterError("bad cache version in " + path);
    const auto kind = get<std::uint8_t>(is);
    const auto has_s = get<std::uint8_t>(is);
    const auto s = get<double>(is);
    const auto n = get<std::int64_t>(is);
    const auto name_len = get<std::uint16_t>(is);
    std::string name(name_len, '\0');
    is.read(name.data(), name_len);
    std::optional<double> param = has_s ? std::optional<double>(s) : std::nullopt;
    if (kind == 0) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(n));
        is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * 8));
        if (!is) throw ResourceError("truncated cache file " + path);
        return arith::ArithmeticTable::from_integer(name, std::move(v), param);
    }
    std::vector<double> v(static_cast<std::size_t>(n));
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * 8));
    if (!is) throw ResourceError("truncated cache file " + path);
    return arith::ArithmeticTable::from_real(name, std::move(v), param);
}

std::string cache_path(const std::string& dir, const std::string& name, std::int64_t n,
                       std::optional<double> s) {
    std::string key = dir + "/" + name + "-N" + std::to_string(n);
    if (s) key += "-s" + fmt(*s);
    return key + ".tbl";
}

arith::ArithmeticTable sieve_cached(const std::string& name, std::int64_t n,
                                    std::optional<double> s) {
    const char* dir = std::getenv("ERGW_CACHE_DIR");
    if (!dir || !*dir) return arith::sieve(name, n, s);
    const std::string canon = arith::canonical_name(name);
    const std::string path = cache_path(dir, canon, n, s);
    if (std::ifstream probe(path, std::ios::binary); probe.good()) {
        auto t = load_table(path);
        if (t.name() == canon && t.size() == n) return t;
    }
    auto t = arith::sieve(name, n, s);
    save_table(path, t);
    return t;
}

std::string signal_to_json(const shift::LatticeSignal& g) {
    nlohmann::json j;
    j["offset"] = g.offset();
    auto& re = j["re"] = nlohmann::json::array();
    auto& im = j["im"] = nlohmann::json::array();
    for (const auto& v : g.values()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return j.dump();
}

shift::LatticeSignal signal_from_json(const std::string& json) {
    const auto j = nlohmann::json::parse(json);
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw ParameterError("signal json: re/im length mismatch");
    std::vector<std::complex<double>> v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im[i]};
    return shift::LatticeSignal(j.at("offset").get<std::int64_t>(), std::move(v));
}

}  // namespace ergw::io
