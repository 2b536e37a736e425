#include "ssplab/trace.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ssplab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
    std::ofstream out(path);
    if (!out) throw SsplabError("cannot open " + path + " for writing");
    out << "# schema=1\n";
    out << "t,k,m,h,s,a,cost,s_next,dummy,epoch,B_t,event\n";
    for (const StepRecord& r : trace.steps) {
        out << r.t << ',' << r.k << ',' << r.m << ',' << r.h << ',' << r.s << ',' << r.a << ','
            << format_double(r.cost) << ',' << r.s_next << ',' << (r.dummy ? 1 : 0) << ','
            << r.epoch << ',' << format_double(r.b_t) << ',' << r.event << '\n';
    }
}

std::vector<StepRecord> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SsplabError("cannot open " + path);
    std::vector<StepRecord> steps;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 't') continue;
        std::istringstream ss(line);
        StepRecord r;
        char comma;
        int dummy_int = 0;
        ss >> r.t >> comma >> r.k >> comma >> r.m >> comma >> r.h >> comma >> r.s >> comma >>
            r.a >> comma >> r.cost >> comma >> r.s_next >> comma >> dummy_int >> comma >>
            r.epoch >> comma >> r.b_t;
        r.dummy = dummy_int != 0;
        std::getline(ss, r.event);
        if (!r.event.empty() && r.event[0] == ',') r.event.erase(0, 1);
        steps.push_back(std::move(r));
    }
    return steps;
}

}  // namespace ssplab
