#include "mlc/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "mlc/errors.hpp"

namespace mlc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits "KEY : value" or "KEY: value"; returns false for section lines.
bool split_header(const std::string& line, std::string& key, std::string& value) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) return false;
    key = trim(line.substr(0, colon));
    value = trim(line.substr(colon + 1));
    return true;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

} // namespace

Instance parse_tsplib(std::istream& in) {
    std::string name = "unnamed";
    std::string type;
    std::string ewt;
    int dimension = -1;
    std::vector<Point> coords;
    bool in_coords = false;
    int coord_count = 0;
    int lineno = 0;

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        std::string ut = upper(t);
        if (ut == "EOF") break;

        if (!in_coords) {
            if (ut == "NODE_COORD_SECTION") {
                if (dimension <= 0)
                    throw ParseError("NODE_COORD_SECTION before DIMENSION", lineno);
                coords.assign(dimension, Point{});
                in_coords = true;
                continue;
            }
            if (ut == "DISPLAY_DATA_SECTION" || ut == "EDGE_WEIGHT_SECTION")
                throw UnsupportedFormatError("unsupported section: " + t);
            std::string key, value;
            if (!split_header(t, key, value))
                throw ParseError("unrecognized header line: " + t, lineno);
            key = upper(key);
            if (key == "NAME") name = value;
            else if (key == "TYPE") type = upper(value);
            else if (key == "DIMENSION") {
                try {
                    dimension = std::stoi(value);
                } catch (const std::exception&) {
                    throw ParseError("bad DIMENSION value: " + value, lineno);
                }
            } else if (key == "EDGE_WEIGHT_TYPE") ewt = upper(value);
            // COMMENT, DISPLAY_DATA_TYPE, etc. are ignored.
            continue;
        }

        // Coordinate line: "<id> <x> <y>". Ids are taken in file order.
        std::istringstream ls(t);
        long id;
        double x, y;
        if (!(ls >> id >> x >> y))
            throw ParseError("malformed coordinate line: " + t, lineno);
        if (coord_count >= dimension)
            throw ParseError("more coordinate lines than DIMENSION", lineno);
        coords[coord_count++] = Point{x, y};
    }

    if (!type.empty() && type != "TSP")
        throw UnsupportedFormatError("unsupported TYPE: " + type);
    if (ewt.empty())
        throw ParseError("missing EDGE_WEIGHT_TYPE");
    Metric metric = metric_from_name(ewt); // throws UnsupportedFormatError
    if (dimension < 3)
        throw ParseError("DIMENSION must be at least 3");
    if (coord_count != dimension)
        throw ParseError("expected " + std::to_string(dimension) +
                         " coordinates, found " + std::to_string(coord_count));

    return Instance(name, metric, std::move(coords));
}

Instance parse_tsplib_string(const std::string& text) {
    std::istringstream in(text);
    return parse_tsplib(in);
}

Instance load_tsplib_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return parse_tsplib(in);
}

std::string write_tsplib(const Instance& inst) {
    std::ostringstream out;
    out.precision(17);
    out << "NAME : " << inst.name() << "\n";
    out << "TYPE : TSP\n";
    out << "DIMENSION : " << inst.size() << "\n";
    out << "EDGE_WEIGHT_TYPE : " << metric_name(inst.metric()) << "\n";
    out << "NODE_COORD_SECTION\n";
    for (int i = 0; i < inst.size(); ++i)
        out << (i + 1) << " " << inst.coord(i).x << " " << inst.coord(i).y << "\n";
    out << "EOF\n";
    return out.str();
}

Tour parse_tour(std::istream& in, int expected_n) {
    std::vector<int> order;
    bool in_section = false;
    int lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        std::string ut = upper(t);
        if (ut == "EOF") break;
        if (!in_section) {
            if (ut == "TOUR_SECTION") in_section = true;
            continue; // headers ignored
        }
        std::istringstream ls(t);
        long id;
        while (ls >> id) {
            if (id == -1) { in_section = false; break; }
            if (id < 1) throw ParseError("tour ids are 1-based", lineno);
            order.push_back(static_cast<int>(id - 1));
        }
    }
    if (order.empty()) throw ParseError("no TOUR_SECTION entries found");
    if (expected_n > 0 && static_cast<int>(order.size()) != expected_n)
        throw ParseError("tour has " + std::to_string(order.size()) +
                         " nodes, expected " + std::to_string(expected_n));
    return Tour{std::move(order)};
}

Tour load_tour_file(const std::string& path, int expected_n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tour file: " + path);
    return parse_tour(in, expected_n);
}

std::string write_tour(const Tour& t, const std::string& name) {
    std::ostringstream out;
    out << "NAME : " << name << "\n";
    out << "TYPE : TOUR\n";
    out << "DIMENSION : " << t.order.size() << "\n";
    out << "TOUR_SECTION\n";
    for (int v : t.order) out << (v + 1) << "\n";
    out << "-1\nEOF\n";
    return out.str();
}

void save_tour_file(const Tour& t, const std::string& name, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write tour file: " + path);
    out << write_tour(t, name);
}

OptimaTable OptimaTable::parse(std::istream& in) {
    OptimaTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::replace(t.begin(), t.end(), ',', ' ');
        std::istringstream ls(t);
        std::string name;
        double opt;
        if (!(ls >> name >> opt))
            throw ParseError("expected 'name,optimum': " + line, lineno);
        table.table_[name] = opt;
    }
    return table;
}

OptimaTable OptimaTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open optima table: " + path);
    return parse(in);
}

std::optional<double> OptimaTable::lookup(const std::string& name) const {
    auto it = table_.find(name);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

void OptimaTable::set(const std::string& name, double optimum) {
    table_[name] = optimum;
}

} // namespace mlc
