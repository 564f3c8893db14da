#ifndef ICEQP_TESTS_FIXTURES_HPP
#define ICEQP_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "iceqp/algebra.hpp"
#include "iceqp/quiver.hpp"

namespace iceqp::tests {

/// Figure-1 square quiver 1 -a-> 2 -b-> 3 -c-> 4 -d-> 1 with W = abcd.
inline IceQP figure1_qp(std::vector<std::string> frozen = {"2", "3"}) {
    Quiver q({"1", "2", "3", "4"},
             {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "4"}, {"d", "4", "1"}},
             std::move(frozen));
    Potential w(q);
    w.add_cycle(Path::of_arrows({0, 1, 2, 3}, q), Rational(1));
    return IceQP(std::move(q), std::move(w));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(ICEQP_DATA_DIR) + "/" + name;
}

} // namespace iceqp::tests

#endif
