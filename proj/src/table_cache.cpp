#include "psl2rp/table_cache.hpp"

#include <cstring>
#include <fstream>
#include <random>
#include <thread>

namespace psl2rp {

namespace {
constexpr char kMagic[4] = {'P', '2', 'R', 'P'};

template <class T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool read_pod(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return bool(is);
}
} // namespace

std::filesystem::path TableCache::path_for(uint32_t p) const {
    return dir_ / ("psl2_" + std::to_string(p) + ".tbl");
}

void TableCache::store(const GroupTable& g) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    auto final_path = path_for(g.p());
    auto tmp_path = final_path;
    tmp_path += ".tmp." + std::to_string(std::random_device{}());
    {
        std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
        if (!os) return; // cache is best-effort
        os.write(kMagic, 4);
        write_pod(os, kVersion);
        write_pod(os, g.p());
        write_pod(os, g.order());
        for (const ProjMatrix& m : g.elements()) {
            write_pod(os, m.a);
            write_pod(os, m.b);
            write_pod(os, m.c);
            write_pod(os, m.d);
        }
        for (uint32_t i = 0; i < g.order(); ++i) write_pod(os, g.inverse(i));
        for (uint32_t i = 0; i < g.order(); ++i) write_pod(os, g.element_order(i));
    }
    // Atomic publish so concurrent writers cannot leave a torn file.
    std::filesystem::rename(tmp_path, final_path, ec);
    if (ec) std::filesystem::remove(tmp_path, ec);
}

std::optional<GroupTable> TableCache::load(uint32_t p, const BuildOptions& opts) const {
    std::ifstream is(path_for(p), std::ios::binary);
    if (!is) return std::nullopt;
    char magic[4];
    is.read(magic, 4);
    uint32_t version = 0, file_p = 0, order = 0;
    if (!is || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
    if (!read_pod(is, version) || version != kVersion) return std::nullopt;
    if (!read_pod(is, file_p) || file_p != p) return std::nullopt;
    if (!read_pod(is, order)) return std::nullopt;
    Prime prime(p, opts.allow_p5);
    if (order != prime.group_order()) return std::nullopt;

    GroupTable g;
    g.p_ = p;
    g.order_ = order;
    g.elems_.resize(order);
    for (ProjMatrix& m : g.elems_) {
        if (!read_pod(is, m.a) || !read_pod(is, m.b) || !read_pod(is, m.c) || !read_pod(is, m.d))
            return std::nullopt;
    }
    std::vector<uint32_t> inv(order), ord(order);
    for (uint32_t& v : inv)
        if (!read_pod(is, v)) return std::nullopt;
    for (uint32_t& v : ord)
        if (!read_pod(is, v)) return std::nullopt;

    // Spot validation, then recompute the derived structure; finish_build
    // rebuilds inverses/orders so a corrupt cache cannot poison results.
    if (g.elems_[0] != ProjMatrix{1, 0, 0, 1}) return std::nullopt;
    for (const ProjMatrix& m : g.elems_)
        if (det_mod(m, p) != 1 || canonical(m, p) != m) return std::nullopt;
    try {
        g.finish_build();
    } catch (const std::exception&) {
        return std::nullopt;
    }
    for (uint32_t i = 0; i < order; ++i)
        if (g.inv_[i] != inv[i] || g.elem_order_[i] != ord[i]) return std::nullopt;

    if (order <= opts.mul_table_threshold) {
        g.mul_table_.resize(uint64_t(order) * order);
        for (uint32_t i = 0; i < order; ++i)
            for (uint32_t j = 0; j < order; ++j)
                g.mul_table_[uint64_t(i) * order + j] =
                    g.lookup(mat_mul(g.elems_[i], g.elems_[j], p));
    }
    return g;
}

GroupTable TableCache::build_cached(uint32_t p, const BuildOptions& opts,
                                    const std::optional<std::filesystem::path>& dir) {
    if (dir) {
        TableCache cache(*dir);
        if (auto g = cache.load(p, opts)) return std::move(*g);
        GroupTable g = GroupTable::build(p, opts);
        cache.store(g);
        return g;
    }
    return GroupTable::build(p, opts);
}

} // namespace psl2rp
