// Copyright 2026 The qdbloch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qdbloch/errors.hpp"

namespace qdbloch {

struct CsvTable {
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const {
        for (std::size_t i = 0; i < headers.size(); ++i) {
            if (headers[i] == name) return columns[i];
        }
        throw ConfigError("csv: no column named '" + name + "'");
    }
    bool has_column(const std::string& name) const {
        return std::find(headers.begin(), headers.end(), name) != headers.end();
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open csv file: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(f, line)) throw ConfigError("csv: empty file " + path);
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.headers.push_back(cell);
    table.columns.resize(table.headers.size());
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t col = 0;
        while (std::getline(ls, cell, ',')) {
            if (col >= table.columns.size()) throw ConfigError("csv: ragged row in " + path);
            table.columns[col++].push_back(std::stod(cell));
        }
        if (col != table.columns.size()) throw ConfigError("csv: ragged row in " + path);
    }
    return table;
}

struct PlotSeries {
    std::string label;
    const std::vector<double>* y = nullptr;
};

/// Minimal static SVG line plot: axes box, four ticks per axis, one polyline
/// per series, legend in the top-right corner.
inline void write_svg_line_plot(const std::string& path, const std::string& title,
                                const std::vector<double>& x, const std::vector<PlotSeries>& series) {
    if (x.empty() || series.empty()) throw ConfigError("svg plot: nothing to draw");
    const int width = 900, height = 520;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x_min = x.front(), x_max = x.front();
    for (double v : x) {
        x_min = std::min(x_min, v);
        x_max = std::max(x_max, v);
    }
    double y_min = 0.0, y_max = 0.0;
    bool first = true;
    for (const auto& s : series) {
        for (double v : *s.y) {
            if (first) {
                y_min = y_max = v;
                first = false;
            }
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    auto sx = [&](double v) { return ml + (v - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double v) { return mt + ph - (v - y_min) / (y_max - y_min) * ph; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ofstream f(path);
    if (!f) throw ConfigError("svg plot: cannot write " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
      << "font-family=\"sans-serif\">" << title << "</text>\n";
    f << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int tick = 0; tick <= 4; ++tick) {
        const double tx = x_min + tick * (x_max - x_min) / 4.0;
        const double ty = y_min + tick * (y_max - y_min) / 4.0;
        f << "<line x1=\"" << sx(tx) << "\" y1=\"" << mt + ph << "\" x2=\"" << sx(tx) << "\" y2=\""
          << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << sx(tx) << "\" y=\"" << mt + ph + 20
          << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", tx);
        f << buf << "</text>\n";
        f << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(ty) << "\" x2=\"" << ml << "\" y2=\"" << sy(ty)
          << "\" stroke=\"black\"/>\n";
        std::snprintf(buf, sizeof(buf), "%.3g", ty);
        f << "<text x=\"" << ml - 8 << "\" y=\"" << sy(ty) + 4
          << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << buf << "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette[si % 8];
        f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < s.y->size(); ++i) {
            f << sx(x[i]) << ',' << sy((*s.y)[i]) << ' ';
        }
        f << "\"/>\n";
        const double ly = mt + 16 + 16 * static_cast<double>(si);
        f << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 125
          << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        f << "<text x=\"" << ml + pw - 120 << "\" y=\"" << ly + 4
          << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.label << "</text>\n";
    }
    f << "</svg>\n";
}

/// Renders probes.csv into population-vs-time and field-vs-time SVG plots.
/// Returns the list of files written.
inline std::vector<std::string> plot_probes(const std::string& probes_csv, const std::string& out_dir) {
    const CsvTable table = read_csv(probes_csv);
    const auto& t = table.column("t");

    std::vector<std::string> written;
    std::vector<PlotSeries> pops;
    for (std::size_t i = 0; i < table.headers.size(); ++i) {
        if (table.headers[i].rfind("pop_", 0) == 0) {
            pops.push_back({table.headers[i], &table.columns[i]});
        }
    }
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    if (!pops.empty()) {
        const std::string path = (fs::path(out_dir) / "populations.svg").string();
        write_svg_line_plot(path, "populations vs time", t, pops);
        written.push_back(path);
    }
    const std::string field_path = (fs::path(out_dir) / "field.svg").string();
    write_svg_line_plot(field_path, "probe field vs time", t, {{"E_probe", &table.column("E_probe")}});
    written.push_back(field_path);
    return written;
}

}  // namespace qdbloch
