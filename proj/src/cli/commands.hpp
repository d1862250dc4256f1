#pragma once

#include "subfpt/config.hpp"

namespace subfpt {

extern const char* kToolVersion;

void run_fig2_left(const ExperimentConfig& cfg);
void run_fig2_right(const ExperimentConfig& cfg);
void run_sample(const ExperimentConfig& cfg);
void run_survival(const ExperimentConfig& cfg);
void run_asymptotics(const ExperimentConfig& cfg);
void run_msd_check(const ExperimentConfig& cfg);

}  // namespace subfpt
