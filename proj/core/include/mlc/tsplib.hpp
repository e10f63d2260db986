#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "mlc/instance.hpp"

namespace mlc {

/// Parse a TSPLIB .tsp stream. Requires TYPE: TSP and one of the supported
/// coordinate metrics (EUC_2D, CEIL_2D, ATT). Node ids are remapped to dense
/// 0-based indices in file order.
Instance parse_tsplib(std::istream& in);
Instance parse_tsplib_string(const std::string& text);
Instance load_tsplib_file(const std::string& path);

/// Serialize back to .tsp text (NAME/TYPE/DIMENSION/EDGE_WEIGHT_TYPE/
/// NODE_COORD_SECTION/EOF).
std::string write_tsplib(const Instance& inst);

/// TSPLIB .tour files: TOUR_SECTION of 1-based node ids, -1 terminator.
Tour parse_tour(std::istream& in, int expected_n = 0);
Tour load_tour_file(const std::string& path, int expected_n = 0);
std::string write_tour(const Tour& t, const std::string& name);
void save_tour_file(const Tour& t, const std::string& name, const std::string& path);

/// Table mapping instance name -> known optimal (or best-known) tour length.
/// Plain text, one "name,length" per line, '#' comments.
class OptimaTable {
public:
    OptimaTable() = default;
    static OptimaTable load(const std::string& path);
    static OptimaTable parse(std::istream& in);

    std::optional<double> lookup(const std::string& name) const;
    void set(const std::string& name, double optimum);
    std::size_t size() const { return table_.size(); }

private:
    std::map<std::string, double> table_;
};

} // namespace mlc
