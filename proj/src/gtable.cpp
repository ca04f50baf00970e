#include "zenoscat/gtable.hpp"

#include "zenoscat/errors.hpp"
#include "zenoscat/format.hpp"

#include <cmath>

// Boost 1.74 pchip calls isnan unqualified
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zenoscat {

TransitionProbabilityTable::TransitionProbabilityTable(int channel, std::vector<double> E, std::vector<double> G,
                                                       GInterpolation interp)
    : channel_(channel), E_(std::move(E)), G_(std::move(G)), interp_(interp) {
    if (E_.empty() || E_.size() != G_.size()) throw ConfigError("G table: empty or mismatched columns");
    for (std::size_t i = 0; i < E_.size(); ++i) {
        if (!std::isfinite(E_[i]) || !std::isfinite(G_[i])) throw ConfigError("G table: non-finite entry");
        if (G_[i] < 0.0) throw ConfigError("G table: negative G at E_out = " + fmt12(E_[i]));
        if (E_[i] <= 0.0 && G_[i] != 0.0) throw ConfigError("G table: G must vanish for E_out <= 0");
        if (i > 0 && !(E_[i] > E_[i - 1])) throw ConfigError("G table: energies must be strictly increasing");
    }
    if (interp_ == GInterpolation::pchip_log) {
        std::vector<double> x, y;
        for (std::size_t i = 0; i < E_.size(); ++i)
            if (E_[i] > 0.0) {
                x.push_back(std::log(E_[i]));
                y.push_back(G_[i]);
            }
        if (x.size() < 4) throw ConfigError("G table: pchip_log interpolation needs 4 positive-energy nodes");
        auto p = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(x), std::move(y));
        pchip_ = std::make_shared<const std::function<double(double)>>([p](double lx) { return (*p)(lx); });
    }
}

std::optional<double> TransitionProbabilityTable::value(double E) const {
    if (E <= 0.0) return 0.0;
    if (E > E_.back()) return std::nullopt;
    // first positive node
    const auto first_pos = std::upper_bound(E_.begin(), E_.end(), 0.0) - E_.begin();
    const double E0 = E_[first_pos];
    if (E < E0) {
        // anchor (max(0, previous node), 0)
        const double Ea = first_pos > 0 ? std::max(0.0, E_[first_pos - 1]) : 0.0;
        return G_[first_pos] * (E - Ea) / (E0 - Ea);
    }
    if (interp_ == GInterpolation::pchip_log) return std::max(0.0, (*pchip_)(std::log(E)));
    auto it = std::lower_bound(E_.begin(), E_.end(), E);
    const auto i = static_cast<std::size_t>(it - E_.begin());
    if (E_[i] == E) return G_[i];
    const double t = (E - E_[i - 1]) / (E_[i] - E_[i - 1]);
    return G_[i - 1] + t * (G_[i] - G_[i - 1]);
}

double TransitionProbabilityTable::operator()(double E) const {
    auto v = value(E);
    if (!v) throw NumericalError("G table queried at E_out = " + fmt12(E) + " K beyond its last node " + fmt12(E_.back()));
    return *v;
}

void TransitionProbabilityTable::normalize_to(double E_ref, double sigma_ref) {
    const double g = (*this)(E_ref);
    if (!(g > 0.0)) throw NumericalError("cannot normalize G table: G vanishes at the reference energy");
    const double s = sigma_ref / g;
    for (auto& v : G_) v *= s;
    *this = TransitionProbabilityTable(channel_, E_, G_, interp_);
    reference = std::make_pair(E_ref, sigma_ref);
}

std::string TransitionProbabilityTable::to_csv() const {
    std::ostringstream os;
    os << "E_out_K,G_rel\n";
    for (std::size_t i = 0; i < E_.size(); ++i) os << fmt12(E_[i]) << ',' << fmt12(G_[i]) << '\n';
    return os.str();
}

TransitionProbabilityTable TransitionProbabilityTable::from_csv(const std::string& text, int channel,
                                                                GInterpolation interp) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> E, G;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_of("0123456789") == std::string::npos ||
            std::isalpha(static_cast<unsigned char>(line[0])))
            continue; // header
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double e, g;
        if (!(ls >> e >> g)) throw ConfigError("G table line " + std::to_string(lineno) + ": expected E_out_K,G_rel");
        E.push_back(e);
        G.push_back(g);
    }
    return TransitionProbabilityTable(channel, std::move(E), std::move(G), interp);
}

TransitionProbabilityTable TransitionProbabilityTable::load(const std::string& path, int channel,
                                                            GInterpolation interp) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open G table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_csv(ss.str(), channel, interp);
}

void TransitionProbabilityTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << to_csv();
}

} // namespace zenoscat
