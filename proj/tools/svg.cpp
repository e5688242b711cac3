// SPDX-License-Identifier: Apache-2.0
//
// pointdata: point-data format tools for radio propagation measurements
// Copyright (C) 2026 The pointdata authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace pointdata::cli
{

namespace
{

constexpr double width = 640, height = 480;
constexpr double left = 70, right = 20, top = 20, bottom = 60;

const char *const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

// Linear mapping from data to canvas with a frame, ticks and labels.
class Canvas
{
public:
    Canvas(double x0, double x1, double y0, double y1) : x0_(x0), x1_(x1), y0_(y0), y1_(y1)
    {
        if (x1_ <= x0_)
            x1_ = x0_ + 1.0;
        if (y1_ <= y0_)
            y1_ = y0_ + 1.0;
        s_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
           << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
           << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    double x(double v) const { return left + (v - x0_) / (x1_ - x0_) * (width - left - right); }
    double y(double v) const { return height - bottom - (v - y0_) / (y1_ - y0_) * (height - top - bottom); }

    void axes(std::string_view x_label, std::string_view y_label, bool log_x)
    {
        s_ << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
           << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 5; ++i)
        {
            const double xv = x0_ + (x1_ - x0_) * i / 5.0;
            const double yv = y0_ + (y1_ - y0_) * i / 5.0;
            text(x(xv), height - bottom + 16, num(log_x ? std::pow(10.0, xv) : xv), "middle");
            text(left - 6, y(yv) + 4, num(yv), "end");
        }
        text(left + (width - left - right) / 2, height - 16, std::string(x_label), "middle");
        s_ << "<text x=\"16\" y=\"" << num(top + (height - top - bottom) / 2) << "\" transform=\"rotate(-90 16 "
           << num(top + (height - top - bottom) / 2) << ")\" text-anchor=\"middle\">" << escape(y_label)
           << "</text>\n";
    }

    void text(double px, double py, const std::string &t, const char *anchor)
    {
        s_ << "<text x=\"" << num(px) << "\" y=\"" << num(py) << "\" text-anchor=\"" << anchor << "\">" << escape(t)
           << "</text>\n";
    }

    void marker(double px, double py, int shape, const char *colour, bool filled)
    {
        const std::string fill = filled ? colour : "none";
        if (shape % 2 == 0)
            s_ << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"4\" fill=\"" << fill
               << "\" stroke=\"" << colour << "\"/>\n";
        else
            s_ << "<rect x=\"" << num(px - 4) << "\" y=\"" << num(py - 4) << "\" width=\"8\" height=\"8\" fill=\""
               << fill << "\" stroke=\"" << colour << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>> &pts, const char *colour, bool dashed)
    {
        s_ << "<polyline fill=\"none\" stroke=\"" << colour << "\"" << (dashed ? " stroke-dasharray=\"6 3\"" : "")
           << " points=\"";
        for (const auto &[px, py] : pts)
            s_ << num(x(px)) << ',' << num(y(py)) << ' ';
        s_ << "\"/>\n";
    }

    void legend(int slot, const std::string &label, const char *colour)
    {
        const double ly = top + 16 + 16 * slot;
        s_ << "<line x1=\"" << left + 10 << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << left + 30 << "\" y2=\""
           << num(ly - 4) << "\" stroke=\"" << colour << "\"/>\n";
        text(left + 36, ly, label, "start");
    }

    std::string finish()
    {
        s_ << "</svg>\n";
        return s_.str();
    }

private:
    double x0_, x1_, y0_, y1_;
    std::ostringstream s_;
};

} // namespace

std::string scatter_svg(const std::vector<analysis::ScatterRow> &rows, const std::vector<FitLine> &lines)
{
    double dmin = 1.0, dmax = 10.0, pmin = 1e300, pmax = -1e300;
    if (!rows.empty())
    {
        dmin = dmax = rows.front().tr_sep_m;
        for (const auto &r : rows)
        {
            dmin = std::min(dmin, r.tr_sep_m);
            dmax = std::max(dmax, r.tr_sep_m);
            pmin = std::min(pmin, r.pl_db);
            pmax = std::max(pmax, r.pl_db);
        }
    }
    const double lx0 = std::log10(std::max(dmin, 1.0)), lx1 = std::log10(std::max(dmax, 1.0)) + 0.1;
    for (const auto &l : lines)
        for (double lx : {lx0, lx1})
        {
            const double v = l.fspl_ref_db + 10.0 * l.ple * lx;
            pmin = std::min(pmin, v);
            pmax = std::max(pmax, v);
        }
    if (pmin > pmax)
        pmin = 0.0, pmax = 1.0;

    Canvas c(lx0, lx1, std::floor(pmin / 10.0) * 10.0, std::ceil(pmax / 10.0) * 10.0);
    c.axes("T-R separation (m)", "Path loss (dB)", true);

    std::map<std::string, int> campaigns;
    for (const auto &r : rows)
        campaigns.emplace(r.campaign_id, static_cast<int>(campaigns.size()));
    for (const auto &r : rows)
    {
        const int k = campaigns[r.campaign_id];
        c.marker(c.x(std::log10(r.tr_sep_m)), c.y(r.pl_db), k, palette[k % 6], r.loc == LocCondition::LOS);
    }

    int slot = 0;
    for (const auto &[name, k] : campaigns)
    {
        c.marker(c.x(lx1) - 140, top + 12 + 16 * slot, k, palette[k % 6], true);
        c.text(c.x(lx1) - 130, top + 16 + 16 * slot, name, "start");
        ++slot;
    }
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        const auto &l = lines[i];
        c.polyline({{lx0, l.fspl_ref_db + 10.0 * l.ple * lx0}, {lx1, l.fspl_ref_db + 10.0 * l.ple * lx1}}, "black",
                   i % 2 == 1);
        c.legend(static_cast<int>(i), l.label + ": n = " + num(l.ple), "black");
    }
    return c.finish();
}

std::string cdf_svg(const std::vector<CdfSeries> &series, std::string_view x_label)
{
    double lo = 1e300, hi = -1e300;
    for (const auto &s : series)
        for (double v : s.cdf.sorted_values)
        {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (lo > hi)
        lo = 0.0, hi = 1.0;

    Canvas c(lo, hi, 0.0, 1.0);
    c.axes(x_label, "CDF", false);
    for (std::size_t k = 0; k < series.size(); ++k)
    {
        const auto &cdf = series[k].cdf;
        std::vector<std::pair<double, double>> pts{{cdf.sorted_values.front(), 0.0}};
        double prev = 0.0;
        for (std::size_t i = 0; i < cdf.sorted_values.size(); ++i)
        {
            pts.emplace_back(cdf.sorted_values[i], prev);
            pts.emplace_back(cdf.sorted_values[i], cdf.probabilities[i]);
            prev = cdf.probabilities[i];
        }
        c.polyline(pts, palette[k % 6], false);
        c.legend(static_cast<int>(k), series[k].label, palette[k % 6]);
    }
    return c.finish();
}

} // namespace pointdata::cli
