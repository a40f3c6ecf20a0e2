#include "report.hpp"

namespace greyfc::report {

nlohmann::json metric_block_json(const metrics::MetricBlock &block) {
  return nlohmann::json{{"mape", block.mape},
                        {"mse", block.mse},
                        {"mae", block.mae},
                        {"count", block.count}};
}

nlohmann::json to_json(const models::FitReport &report) {
  nlohmann::json j;
  j["model"] = models::to_string(report.model);
  if (report.hyper) {
    if (report.model == models::Model::fgm) {
      j["hyper"] = {{"r", report.hyper->r}};
    } else {
      j["hyper"] = {{"r", report.hyper->r}, {"alpha", report.hyper->alpha}};
    }
  }
  if (report.dgm) {
    j["params"] = {{"beta1", report.dgm->beta1}, {"beta2", report.dgm->beta2}};
  } else if (report.params) {
    if (report.model == models::Model::ufgm) {
      j["params"] = {{"a", report.params->a},
                     {"b", report.params->b},
                     {"c", report.params->c}};
    } else {
      j["params"] = {{"a", report.params->a}, {"b", report.params->b}};
    }
  }
  j["fitted"] = report.fitted;
  j["forecast"] = report.forecast;
  j["metrics_in"] = metric_block_json(report.metrics_in);
  if (report.metrics_out) {
    j["metrics_out"] = metric_block_json(*report.metrics_out);
  }
  j["lewis_grade"] = metrics::to_string(report.lewis);
  if (report.search) {
    j["search"] = {{"algorithm", report.search->algorithm},
                   {"seed", report.search->seed},
                   {"best_fitness", report.search->best_fitness},
                   {"trace", report.search->trace}};
  }
  return j;
}

std::string to_json_string(const models::FitReport &report) {
  return to_json(report).dump(2);
}

}  // namespace greyfc::report
