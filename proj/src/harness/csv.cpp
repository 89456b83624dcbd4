#include "riscfo/harness/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "riscfo/io.hpp"

namespace riscfo::harness {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_csv(const std::vector<CurvePoint>& points, std::ostream& os) {
    std::vector<const CurvePoint*> rows;
    rows.reserve(points.size());
    for (const CurvePoint& p : points)
        rows.push_back(&p);
    std::stable_sort(rows.begin(), rows.end(), [](const CurvePoint* a, const CurvePoint* b) {
        if (a->metric != b->metric)
            return a->metric < b->metric;
        return a->x < b->x;
    });
    os << "x,metric,mean,ci95,trials\n";
    for (const CurvePoint* p : rows)
        os << num(p->x) << ',' << p->metric << ',' << num(p->mean) << ',' << num(p->ci95) << ','
           << p->trials << '\n';
}

void emit_csv(const std::vector<CurvePoint>& points, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError(path, "cannot open for writing");
    write_csv(points, os);
    os.flush();
    if (!os)
        throw IoError(path, "write failed");
}

std::vector<CurvePoint> read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError(path, "cannot open for reading");
    std::string line;
    if (!std::getline(is, line) || line != "x,metric,mean,ci95,trials")
        throw IoError(path, "expected header 'x,metric,mean,ci95,trials'");
    std::vector<CurvePoint> points;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');)
            fields.push_back(f);
        if (fields.size() != 5)
            throw IoError(path, "expected 5 fields at line " + std::to_string(line_no));
        try {
            CurvePoint p;
            p.x = std::stod(fields[0]);
            p.metric = fields[1];
            p.mean = std::stod(fields[2]);
            p.ci95 = std::stod(fields[3]);
            p.trials = std::stoll(fields[4]);
            points.push_back(std::move(p));
        } catch (const std::logic_error&) {
            throw IoError(path, "malformed number at line " + std::to_string(line_no));
        }
    }
    return points;
}

}  // namespace riscfo::harness
