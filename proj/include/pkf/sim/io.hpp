#pragma once

#include <filesystem>
#include <json.hpp>
#include <vector>

#include "pkf/sim/experiments.hpp"

namespace pkf::sim {

nlohmann::json to_json(const ScenarioConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
ScenarioConfig scenario_config_from_json(const nlohmann::json& j, ScenarioConfig base = {});

nlohmann::json to_json(const FilterConfig& c);
FilterConfig filter_config_from_json(const nlohmann::json& j, FilterConfig base = {});

nlohmann::json to_json(const Scenario& s);
nlohmann::json to_json(const TrackingReport& r);
nlohmann::json to_json(const BatchResult& b);

/// method,obj_1..obj_n,avg,std,failed
void write_table1_csv(const std::filesystem::path& path, const BatchResult& b);
/// noise,method,error,std,failed
void write_fig4_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
/// objects,method,best_ms,median_ms,mean_ms
void write_table2_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows);

}  // namespace pkf::sim
