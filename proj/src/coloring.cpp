#include "gowers/coloring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace gowers {

std::vector<KTuple> enumerate_box(const Box& box) {
    if (box.dim < 1) throw std::invalid_argument("box dimension must be positive");
    if (box.max_coord < box.lo())
        throw std::invalid_argument("box is empty: max_coord below the lower bound");

    std::vector<KTuple> cells;
    std::vector<Coord> cur(static_cast<std::size_t>(box.dim), box.lo());
    for (;;) {
        KTuple t{cur};
        if (in_space(t, box.space)) cells.push_back(std::move(t));
        int pos = box.dim - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == box.max_coord) {
            cur[static_cast<std::size_t>(pos)] = box.lo();
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<std::size_t>(pos)];
    }
    if (cells.empty())
        throw std::invalid_argument(std::string("box is empty: no cell of [") +
                                    std::to_string(box.lo()) + ".." + std::to_string(box.max_coord) +
                                    "]^" + std::to_string(box.dim) + " lies in " + space_name(box.space));
    return cells;
}

CellIndex::CellIndex(const Box& box) : box_(box), cells_(enumerate_box(box)) {}

std::optional<std::uint32_t> CellIndex::try_index(const KTuple& t) const {
    if (t.dim() != box_.dim) return std::nullopt;
    auto it = std::lower_bound(cells_.begin(), cells_.end(), t);
    if (it == cells_.end() || *it != t) return std::nullopt;
    return static_cast<std::uint32_t>(it - cells_.begin());
}

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Coloring parse_coloring(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    // header
    int k = 0, r = 0;
    Coord n = 0;
    Space space = Space::Xk;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (blank(line)) continue;
        std::istringstream hs(line);
        std::string fk, fn, fr, fs;
        if (!(hs >> fk >> fn >> fr >> fs) || fk.rfind("k=", 0) != 0 || fn.rfind("N=", 0) != 0 ||
            fr.rfind("r=", 0) != 0 || fs.rfind("space=", 0) != 0)
            throw ColoringParseError(lineno, "bad header, expected `k=<int> N=<int> r=<int> space=<Xk|Yk>`");
        try {
            k = std::stoi(fk.substr(2));
            n = std::stoll(fn.substr(2));
            r = std::stoi(fr.substr(2));
            space = parse_space(fs.substr(6));
        } catch (const std::exception& e) {
            throw ColoringParseError(lineno, std::string("bad header: ") + e.what());
        }
        if (space != Space::Xk && space != Space::Yk)
            throw ColoringParseError(lineno, "bad header: space must be Xk or Yk");
        if (k < 1 || r < 1) throw ColoringParseError(lineno, "bad header: k and r must be positive");
        have_header = true;
        break;
    }
    if (!have_header) throw ColoringParseError(lineno, "missing header");

    Box box{k, n, space};
    CellIndex index(box);
    std::vector<int> colors(index.size(), -1);

    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (blank(line)) continue;
        std::istringstream ls(line);
        std::vector<Coord> fields;
        Coord v;
        while (ls >> v) fields.push_back(v);
        std::string junk;
        ls.clear();
        if (ls >> junk) throw ColoringParseError(lineno, "dimension mismatch: non-numeric field");
        if (static_cast<int>(fields.size()) != k + 1)
            throw ColoringParseError(lineno, "dimension mismatch: expected " + std::to_string(k) +
                                                 " coordinates and a color");
        const Coord color = fields.back();
        fields.pop_back();
        for (Coord c : fields)
            if (c < 0) throw ColoringParseError(lineno, "cell outside box: negative coordinate");
        auto idx = index.try_index(KTuple{fields});
        if (!idx) throw ColoringParseError(lineno, "cell outside box: " + KTuple{fields}.to_string());
        if (color < 0 || color >= r)
            throw ColoringParseError(lineno, "color out of range: " + std::to_string(color));
        if (colors[*idx] != -1)
            throw ColoringParseError(lineno, "duplicate cell line: " + index.cell(*idx).to_string());
        colors[*idx] = static_cast<int>(color);
    }
    for (std::uint32_t i = 0; i < index.size(); ++i)
        if (colors[i] == -1)
            throw ColoringParseError(lineno, "uncolored cell: " + index.cell(i).to_string());

    return Coloring{box, r, std::move(colors)};
}

std::string serialize_coloring(const Coloring& c) {
    CellIndex index(c.box);
    if (c.colors.size() != index.size())
        throw std::invalid_argument("coloring is not total over the box");
    std::ostringstream os;
    os << "k=" << c.box.dim << " N=" << c.box.max_coord << " r=" << c.num_colors
       << " space=" << space_name(c.box.space) << '\n';
    for (std::uint32_t i = 0; i < index.size(); ++i) {
        for (Coord v : index.cell(i).coords()) os << v << ' ';
        os << c.colors[i] << '\n';
    }
    return os.str();
}

std::string coloring_to_json(const Coloring& c) {
    CellIndex index(c.box);
    nlohmann::ordered_json j;
    j["k"] = c.box.dim;
    j["N"] = c.box.max_coord;
    j["r"] = c.num_colors;
    j["space"] = space_name(c.box.space);
    auto& cells = j["cells"] = nlohmann::ordered_json::array();
    for (std::uint32_t i = 0; i < index.size(); ++i) {
        nlohmann::ordered_json entry;
        entry["cell"] = index.cell(i).coords();
        entry["color"] = c.colors[i];
        cells.push_back(std::move(entry));
    }
    return j.dump(2);
}

Coloring canonicalize_colors(const Coloring& c) {
    std::vector<int> rename(static_cast<std::size_t>(c.num_colors), -1);
    int next = 0;
    Coloring out = c;
    for (std::size_t i = 0; i < c.colors.size(); ++i) {
        int& slot = rename[static_cast<std::size_t>(c.colors[i])];
        if (slot == -1) slot = next++;
        out.colors[i] = slot;
    }
    return out;
}

}  // namespace gowers
