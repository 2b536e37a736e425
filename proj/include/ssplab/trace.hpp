#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssplab/env.hpp"

namespace ssplab {

struct StepRecord {
    long t = 0;   // global record index (dummy feeds included), 1-based
    long k = 0;   // episode, 1-based
    long m = 0;   // interval, 1-based
    int h = 0;    // layer within interval, 1..H
    StateId s = 0;
    int a = 0;
    double cost = 0.0;
    StateId s_next = 0;
    bool dummy = false;  // goal-feed after the episode already ended
    int epoch = 1;
    double b_t = 0.0;
    std::string event;
};

struct IntervalRecord {
    long m = 0;
    long k = 0;
    StateId s1 = 0;
    StateId s_end = 0;   // s^m_{H+1}
    double cost_sum = 0.0;
    bool reached_goal = false;
    int H = 0;
    int epoch = 1;
    double b_t = 0.0;
};

struct RunTrace {
    bool record_steps = true;
    std::vector<StepRecord> steps;
    std::vector<IntervalRecord> intervals;
    std::vector<std::pair<long, std::string>> events;  // (interval m, label)

    StateId s_init = 0;
    int H = 0;                   // horizon of the first epoch
    TerminalCostSpec terminal;
    long target_episodes = 0;
    long episodes_completed = 0;
    long total_records = 0;
    long total_real_steps = 0;
    double total_real_cost = 0.0;
    bool complete = false;
    bool step_capped = false;
};

// Pinned CSV schema: header comment `# schema=1`, then
// t,k,m,h,s,a,cost,s_next,dummy,epoch,B_t,event. Floats use %.17g.
void write_trace_csv(const std::string& path, const RunTrace& trace);
std::vector<StepRecord> read_trace_csv(const std::string& path);

std::string format_double(double v);  // %.17g, deterministic

}  // namespace ssplab
