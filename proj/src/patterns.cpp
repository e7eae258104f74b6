// patterns.cpp
#include "sftlab/patterns.hpp"

#include "sftlab/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

namespace sftlab {

void check_alphabet(int alphabet) {
    if (alphabet < 2 || alphabet > 255)
        throw DomainError("alphabet size must be in [2, 255], got " + std::to_string(alphabet));
}

namespace {

std::optional<Cube> detect_box(const PointSet& s) {
    if (s.empty()) return std::nullopt;
    int d = s.dim();
    Point lo = s.points().front(), hi = s.points().back();
    int side = hi[0] - lo[0] + 1;
    std::size_t vol = 1;
    for (int i = 0; i < d; ++i) {
        if (hi[i] - lo[i] + 1 != side) return std::nullopt;
        vol *= static_cast<std::size_t>(side);
    }
    if (vol != s.size()) return std::nullopt;
    return Cube{lo, side};
}

} // namespace

Pattern::Pattern(PointSet shape, std::vector<Symbol> symbols)
    : shape_(std::move(shape)), symbols_(std::move(symbols)) {
    if (shape_.size() != symbols_.size())
        throw DomainError("pattern needs one symbol per shape point");
    box_ = detect_box(shape_);
}

Pattern Pattern::on_cube(int d, int side, std::vector<Symbol> symbols, Point origin) {
    return Pattern(cube_points(Cube{origin, side}, d), std::move(symbols));
}

Pattern Pattern::on_fk(int d, int k, std::vector<Symbol> symbols) {
    Point one{};
    for (int i = 0; i < d; ++i) one[i] = 1;
    return on_cube(d, k, std::move(symbols), one);
}

std::ptrdiff_t Pattern::index_of(const Point& p) const {
    if (box_) {
        std::ptrdiff_t idx = 0;
        for (int i = 0; i < dim(); ++i) {
            int c = p[i] - box_->origin[i];
            if (c < 0 || c >= box_->side) return -1;
            idx = idx * box_->side + c;
        }
        for (int i = dim(); i < kMaxDim; ++i)
            if (p[i] != 0) return -1;
        return idx;
    }
    const auto& pts = shape_.points();
    auto it = std::lower_bound(pts.begin(), pts.end(), p);
    if (it == pts.end() || *it != p) return -1;
    return it - pts.begin();
}

bool Pattern::has(const Point& p) const { return index_of(p) >= 0; }

Symbol Pattern::at(const Point& p) const {
    auto i = index_of(p);
    if (i < 0) throw DomainError("point " + to_string(p, dim()) + " is not in the pattern");
    return symbols_[static_cast<std::size_t>(i)];
}

Pattern Pattern::translated(const Point& v) const {
    std::vector<Point> pts = shape_.points();
    for (auto& p : pts)
        for (int i = 0; i < dim(); ++i) p[i] += v[i];
    // translation preserves lex order, so symbols stay aligned
    return Pattern(PointSet::from(dim(), std::move(pts)), symbols_);
}

Pattern Pattern::normalized() const {
    if (shape_.empty()) return *this;
    Point v{};
    for (int i = 0; i < dim(); ++i) v[i] = -shape_.points().front()[i];
    return translated(v);
}

bool Pattern::operator==(const Pattern& o) const {
    if (dim() != o.dim() || size() != o.size() || symbols_ != o.symbols_) return false;
    if (shape_.empty()) return true;
    const auto& a = shape_.points();
    const auto& b = o.shape_.points();
    for (std::size_t t = 0; t < a.size(); ++t)
        for (int i = 0; i < dim(); ++i)
            if (a[t][i] - a[0][i] != b[t][i] - b[0][i]) return false;
    return true;
}

Pattern restrict(const Pattern& u, const Cube& s) {
    int d = u.dim();
    std::vector<Symbol> sym;
    PointSet pts = cube_points(s, d);
    sym.reserve(pts.size());
    for (const auto& p : pts) {
        if (!u.has(p))
            throw DomainError("restriction cube leaves the pattern at " + to_string(p, d));
        sym.push_back(u.at(p));
    }
    return Pattern(std::move(pts), std::move(sym)).normalized();
}

std::optional<std::uint64_t> window_table_size(int alphabet, int d, int n) {
    std::uint64_t cells = 1;
    for (int i = 0; i < d; ++i) {
        cells *= static_cast<std::uint64_t>(n);
        if (cells > 64) return std::nullopt;
    }
    std::uint64_t size = 1;
    for (std::uint64_t c = 0; c < cells; ++c) {
        if (size > (std::uint64_t{1} << 63) / static_cast<std::uint64_t>(alphabet))
            return std::nullopt;
        size *= static_cast<std::uint64_t>(alphabet);
    }
    return size;
}

WindowCodec::WindowCodec(int alphabet, int d, int n) : a_(alphabet), d_(d), n_(n) {
    check_alphabet(alphabet);
    check_dim(d);
    if (n < 1) throw DomainError("window side must be >= 1");
    auto sz = window_table_size(alphabet, d, n);
    if (!sz) throw ResourceError("window codes do not fit in 64 bits");
    size_ = *sz;
    cells_ = 1;
    for (int i = 0; i < d; ++i) cells_ *= n;
}

std::uint64_t WindowCodec::encode(std::span<const Symbol> cells) const {
    std::uint64_t c = 0;
    for (Symbol s : cells) c = c * static_cast<std::uint64_t>(a_) + s;
    return c;
}

void WindowCodec::decode(std::uint64_t code, std::span<Symbol> out) const {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<Symbol>(code % static_cast<std::uint64_t>(a_));
        code /= static_cast<std::uint64_t>(a_);
    }
}

std::vector<Symbol> window_symbols(const Pattern& u, const Point& m, int n) {
    int d = u.dim();
    std::vector<Symbol> out;
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = n;
    for_each_in_box(d, m, ext, [&](const Point& p) { out.push_back(u.at(p)); });
    return out;
}

std::vector<std::uint64_t> window_codes(const Pattern& u, int n, int alphabet) {
    WindowCodec codec(alphabet, u.dim(), n);
    auto cubes = cubes_in(u.shape(), n);
    if (cubes.empty()) throw DomainError("no n-cube fits in the pattern shape");
    std::vector<std::uint64_t> out;
    out.reserve(cubes.size());
    for (const auto& c : cubes) out.push_back(codec.encode(window_symbols(u, c.origin, n)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WindowClasses window_classes(const Pattern& u, int n) {
    WindowClasses wc;
    wc.cubes = u.box() ? cubes_in(*u.box(), n, u.dim()) : cubes_in(u.shape(), n);
    if (wc.cubes.empty()) throw DomainError("no n-cube fits in the pattern shape");
    std::unordered_map<std::string, int> ids;
    wc.cls.reserve(wc.cubes.size());
    for (std::size_t i = 0; i < wc.cubes.size(); ++i) {
        auto sym = window_symbols(u, wc.cubes[i].origin, n);
        std::string key(sym.begin(), sym.end());
        auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(wc.first.size()));
        if (fresh) wc.first.push_back(static_cast<int>(i));
        wc.cls.push_back(it->second);
    }
    return wc;
}

int window_count(const Pattern& u, int n) { return window_classes(u, n).distinct(); }

std::map<int, std::uint64_t> complexity_histogram(int alphabet, int d, int n, int k) {
    check_alphabet(alphabet);
    check_dim(d);
    if (n < 1 || k < n) throw DomainError("complexity histogram needs 1 <= n <= k");
    int cells = 1;
    for (int i = 0; i < d; ++i) cells *= k;
    double total = 1;
    for (int i = 0; i < cells; ++i) total *= alphabet;
    if (total > double(1 << 24))
        throw ResourceError("complexity histogram over " + std::to_string(alphabet) + "^" +
                            std::to_string(cells) + " patterns exceeds the 2^24 budget");
    WindowCodec codec(alphabet, d, n);
    auto cubes = cubes_in(Cube{Point{}, k}, n, d);
    // offsets of window cells in the row-major F_k array
    std::vector<int> offsets;
    Point ext{};
    for (int i = 0; i < d; ++i) ext[i] = n;
    auto flat = [&](const Point& p) {
        int idx = 0;
        for (int i = 0; i < d; ++i) idx = idx * k + p[i];
        return idx;
    };
    for_each_in_box(d, Point{}, ext, [&](const Point& p) { offsets.push_back(flat(p)); });
    std::vector<int> starts;
    for (const auto& c : cubes) starts.push_back(flat(c.origin));

    std::map<int, std::uint64_t> hist;
    std::vector<Symbol> u(static_cast<std::size_t>(cells), 0);
    std::vector<std::uint64_t> codes(starts.size());
    while (true) {
        for (std::size_t w = 0; w < starts.size(); ++w) {
            std::uint64_t c = 0;
            for (int off : offsets) c = c * static_cast<std::uint64_t>(alphabet) + u[starts[w] + off];
            codes[w] = c;
        }
        std::sort(codes.begin(), codes.end());
        int j = static_cast<int>(std::unique(codes.begin(), codes.end()) - codes.begin());
        ++hist[j];
        int i = cells - 1;
        while (i >= 0 && ++u[i] == alphabet) u[i--] = 0;
        if (i < 0) break;
    }
    return hist;
}

TextPattern read_pattern(std::istream& in) {
    std::ostringstream body;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        body << line << '\n';
    }
    std::istringstream tok(body.str());
    int d = 0, side = 0, alphabet = 0;
    if (!(tok >> d >> side >> alphabet)) throw DomainError("pattern header must be 'd side alphabet'");
    check_dim(d);
    check_alphabet(alphabet);
    if (side < 1) throw DomainError("pattern side must be >= 1");
    std::size_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<std::size_t>(side);
    std::vector<Symbol> sym;
    sym.reserve(cells);
    long v;
    while (tok >> v) {
        if (v < 0 || v >= alphabet)
            throw DomainError("symbol " + std::to_string(v) + " outside the alphabet");
        sym.push_back(static_cast<Symbol>(v));
    }
    if (!tok.eof()) throw DomainError("pattern body contains a non-integer token");
    if (sym.size() != cells)
        throw DomainError("pattern body has " + std::to_string(sym.size()) + " symbols, expected " +
                          std::to_string(cells));
    return {Pattern::on_fk(d, side, std::move(sym)), alphabet};
}

void write_pattern(std::ostream& out, const Pattern& u, int alphabet) {
    auto box = u.box();
    if (!box) throw DomainError("only cube-shaped patterns have a text form");
    int d = u.dim(), k = box->side;
    out << d << ' ' << k << ' ' << alphabet << '\n';
    const auto& s = u.symbols();
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << int(s[i]);
        bool row_end = (i + 1) % static_cast<std::size_t>(k) == 0;
        out << (row_end ? '\n' : ' ');
        if (d == 3 && (i + 1) % static_cast<std::size_t>(k * k) == 0 && i + 1 < s.size()) out << '\n';
    }
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw DomainError("truncated window-code stream");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

} // namespace

void write_window_codes(std::ostream& out, std::span<const std::uint64_t> codes) {
    put_u64(out, codes.size());
    for (auto c : codes) put_u64(out, c);
}

std::vector<std::uint64_t> read_window_codes(std::istream& in) {
    auto n = get_u64(in);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(get_u64(in));
    return out;
}

} // namespace sftlab
