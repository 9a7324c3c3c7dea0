#ifndef EWI_CONFIG_HPP
#define EWI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "ewi/synth.hpp"

// Experiment configuration: everything a simulate/reconstruct run needs,
// loaded from a JSON file or one of the bundled named configs.

namespace ewi {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExperimentConfig {
    int dim = 2;
    LameParameters medium{1.0, 1.0};
    std::vector<std::vector<double>> source_locations;
    std::vector<std::vector<std::vector<double>>> source_tensors;
    double geometry_radius = 10.0;
    int geometry_nodes = 200;
    double omega_star = 5.0;
    double eta = 1.2;
    int freq_count = 10;
    std::optional<NoiseSpec> noise;
    std::vector<double> grid_lower, grid_upper;
    std::vector<int> grid_counts;
    int direction_resolution = 0; // 0 = auto rule per frequency
    double peak_threshold = 0.25;
    double peak_min_separation = 0.0; // 0 = 1/omega*
    int refine_levels = 0;
    int refine_nodes = 50;

    template <std::size_t D>
    SourceConfiguration<D> sources() const {
        SourceConfiguration<D> cfg;
        for (std::size_t j = 0; j < source_locations.size(); ++j) {
            MomentTensorSource<D> s;
            for (std::size_t a = 0; a < D; ++a) s.location[a] = source_locations[j][a];
            for (std::size_t i = 0; i < D; ++i)
                for (std::size_t k = 0; k < D; ++k) s.tensor[i][k] = source_tensors[j][i][k];
            cfg.sources.push_back(s);
        }
        return cfg;
    }
};

// parse/serialize; throws ConfigError with the offending key path
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

// path first; if no such file and the name matches a bundled config
// ("table1_2d", "table2_3d"), the embedded copy is used
ExperimentConfig load_config(const std::string& path_or_name);

const std::vector<std::string>& bundled_config_names();
std::string bundled_config_text(const std::string& name);

// full cross-field validation (dimension consistency + component invariants)
void validate_config(const ExperimentConfig& cfg);

} // namespace ewi

#endif // EWI_CONFIG_HPP
