#include "dtt/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dtt {

namespace {

constexpr std::uint8_t kFttVersion = 1;
constexpr std::uint8_t kSirtVersion = 1;
constexpr std::uint8_t kDirtVersion = 1;

void put_u8(std::ostream& os, std::uint8_t v) {
    os.put(char(v));
}
std::uint8_t get_u8(std::istream& is) {
    int c = is.get();
    if (c < 0) throw std::runtime_error("io: truncated stream");
    return std::uint8_t(c);
}

void put_i32(std::ostream& os, std::int32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (std::uint32_t(v) >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 4);
}
std::int32_t get_i32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("io: truncated stream");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return std::int32_t(v);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    static_assert(sizeof(u) == sizeof(v));
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (u >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 8);
}
double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("io: truncated stream");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

void put_string(std::ostream& os, const std::string& s) {
    put_i32(os, std::int32_t(s.size()));
    os.write(s.data(), std::streamsize(s.size()));
}
std::string get_string(std::istream& is) {
    std::int32_t n = get_i32(is);
    if (n < 0) throw std::runtime_error("io: bad string length");
    std::string s(std::size_t(n), '\0');
    is.read(s.data(), n);
    if (!is) throw std::runtime_error("io: truncated stream");
    return s;
}

void put_tensor(std::ostream& os, const Tensor3& t) {
    put_i32(os, t.r0());
    put_i32(os, t.n());
    put_i32(os, t.r1());
    for (std::size_t i = 0; i < t.size(); ++i) put_f64(os, t.data()[i]);
}
Tensor3 get_tensor(std::istream& is) {
    int r0 = get_i32(is), n = get_i32(is), r1 = get_i32(is);
    if (r0 < 0 || n < 0 || r1 < 0) throw std::runtime_error("io: bad tensor shape");
    Tensor3 t(r0, n, r1);
    for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = get_f64(is);
    return t;
}

void put_basis(std::ostream& os, const Basis1D& b) {
    put_u8(os, std::uint8_t(b.family()));
    put_i32(os, b.n());
    put_f64(os, b.a());
    put_f64(os, b.b());
}
BasisPtr get_basis(std::istream& is) {
    std::uint8_t fam = get_u8(is);
    if (fam > 2) throw std::runtime_error("io: unknown basis family tag");
    int n = get_i32(is);
    double a = get_f64(is), b = get_f64(is);
    return std::make_shared<Basis1D>(Basis1D::make(BasisFamily(fam), n, a, b));
}

}  // namespace

void save_ftt(std::ostream& os, const Ftt& f) {
    put_u8(os, kFttVersion);
    put_i32(os, f.dim());
    for (int k = 0; k <= f.dim(); ++k) put_i32(os, f.rank(k));
    for (const auto& b : f.bases) put_basis(os, *b);
    for (const auto& c : f.cores) put_tensor(os, c);
}

Ftt load_ftt(std::istream& is) {
    if (get_u8(is) != kFttVersion)
        throw std::runtime_error("io: unsupported FTT format version");
    int d = get_i32(is);
    if (d < 1) throw std::runtime_error("io: bad FTT dimension");
    std::vector<int> ranks(d + 1);
    for (int k = 0; k <= d; ++k) ranks[k] = get_i32(is);
    Ftt f;
    for (int k = 0; k < d; ++k) f.bases.push_back(get_basis(is));
    for (int k = 0; k < d; ++k) {
        Tensor3 t = get_tensor(is);
        if (t.r0() != ranks[k] || t.r1() != ranks[k + 1] ||
            t.n() != f.bases[k]->n())
            throw std::runtime_error("io: core shape disagrees with header");
        f.cores.push_back(std::move(t));
    }
    return f;
}

void save_ftt(const std::string& path, const Ftt& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("io: cannot open " + path);
    save_ftt(os, f);
}

Ftt load_ftt(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("io: cannot open " + path);
    return load_ftt(is);
}

// private-field access for (de)serialization
struct SirtSerde {
    static void write(std::ostream& os, const Sirt& s) {
        put_u8(os, kSirtVersion);
        save_ftt(os, s.g_);
        put_i32(os, std::int32_t(s.marg_.size()));
        for (const auto& t : s.marg_) put_tensor(os, t);
        put_f64(os, s.z_hat_);
        put_f64(os, s.gamma_rel_);
    }
    static Sirt read(std::istream& is) {
        if (get_u8(is) != kSirtVersion)
            throw std::runtime_error("io: unsupported SIRT format version");
        Sirt s;
        s.g_ = load_ftt(is);
        int m = get_i32(is);
        if (m != s.g_.dim()) throw std::runtime_error("io: bad SIRT payload");
        for (int k = 0; k < m; ++k) s.marg_.push_back(get_tensor(is));
        s.z_hat_ = get_f64(is);
        s.gamma_rel_ = get_f64(is);
        s.finish_init();
        return s;
    }
};

void save_sirt(std::ostream& os, const Sirt& s) { SirtSerde::write(os, s); }
Sirt load_sirt(std::istream& is) { return SirtSerde::read(is); }

void save_dirt(const std::string& path, const Dirt& d, const std::string& meta) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("io: cannot open " + path);
    put_u8(os, kDirtVersion);
    put_u8(os, std::uint8_t(d.reference.kind()));
    put_f64(os, d.reference.bound());
    put_i32(os, std::int32_t(d.schedule.betas.size()));
    for (double b : d.schedule.betas) put_f64(os, b);
    put_u8(os, std::uint8_t(d.schedule.prior_rule));
    put_f64(os, d.schedule.prior_power);
    put_u8(os, std::uint8_t(d.schedule.ratio_mode));
    put_i32(os, d.num_layers());
    for (double s : d.shifts) put_f64(os, s);
    put_string(os, meta);
    for (const auto& layer : d.layers) save_sirt(os, layer);
}

Dirt load_dirt(const std::string& path, std::string* meta) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("io: cannot open " + path);
    if (get_u8(is) != kDirtVersion)
        throw std::runtime_error("io: unsupported DIRT format version");
    Dirt d;
    std::uint8_t kind = get_u8(is);
    double bound = get_f64(is);
    d.reference = kind == std::uint8_t(Reference::Kind::Uniform)
                      ? Reference::uniform()
                      : Reference::truncated_normal(bound);
    int nb = get_i32(is);
    if (nb < 1) throw std::runtime_error("io: bad schedule");
    d.schedule.betas.resize(nb);
    for (int i = 0; i < nb; ++i) d.schedule.betas[i] = get_f64(is);
    d.schedule.prior_rule = BridgingSchedule::PriorRule(get_u8(is));
    d.schedule.prior_power = get_f64(is);
    d.schedule.ratio_mode = BridgingSchedule::RatioMode(get_u8(is));
    int nl = get_i32(is);
    if (nl != nb) throw std::runtime_error("io: layer count disagrees with schedule");
    d.shifts.resize(nl);
    for (int i = 0; i < nl; ++i) d.shifts[i] = get_f64(is);
    std::string m = get_string(is);
    if (meta) *meta = m;
    for (int i = 0; i < nl; ++i) d.layers.push_back(load_sirt(is));
    return d;
}

}  // namespace dtt
