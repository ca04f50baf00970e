#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zenoscat {

enum class GInterpolation { linear, pchip_log };

// Relative transition probability G_f(E_out) on a strictly increasing exit-energy grid.
// G vanishes for E_out <= 0; between 0 and the first node it is interpolated from (0, 0).
class TransitionProbabilityTable {
public:
    TransitionProbabilityTable() = default;
    TransitionProbabilityTable(int channel, std::vector<double> E, std::vector<double> G,
                               GInterpolation interp = GInterpolation::linear);

    int channel() const { return channel_; }
    const std::vector<double>& energies() const { return E_; }
    const std::vector<double>& values() const { return G_; }
    GInterpolation interpolation() const { return interp_; }
    double E_max() const { return E_.back(); }
    bool covers(double E) const { return E <= E_.back(); }

    // Interpolated value; nullopt above the last node.
    std::optional<double> value(double E) const;
    double operator()(double E) const; // throws above the last node

    // reference point (E, sigma) used for normalization
    std::optional<std::pair<double, double>> reference;

    // Multiply by s so that G(E_ref) = sigma_ref.
    void normalize_to(double E_ref, double sigma_ref);

    // CSV columns E_out_K,G_rel
    std::string to_csv() const;
    static TransitionProbabilityTable from_csv(const std::string& text, int channel,
                                               GInterpolation interp = GInterpolation::linear);
    static TransitionProbabilityTable load(const std::string& path, int channel,
                                           GInterpolation interp = GInterpolation::linear);
    void save(const std::string& path) const;

    bool operator==(const TransitionProbabilityTable& o) const {
        return channel_ == o.channel_ && E_ == o.E_ && G_ == o.G_ && interp_ == o.interp_;
    }

private:
    int channel_ = 0;
    std::vector<double> E_, G_;
    GInterpolation interp_ = GInterpolation::linear;
    std::shared_ptr<const std::function<double(double)>> pchip_; // of log E
};

} // namespace zenoscat
