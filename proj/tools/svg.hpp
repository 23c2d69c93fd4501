#pragma once

// Minimal static SVG plots: axes, rectangles, segments, dots. Coordinates are
// given in data units and mapped into a fixed pixel frame.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace qgcli {

class SvgPlot {
public:
    SvgPlot(double x0, double x1, double y0, double y1, std::string x_label, std::string y_label)
        : x0_(x0), x1_(x1), y0_(y0), y1_(y1), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {
        if (!(x1_ > x0_)) x1_ = x0_ + 1.0;
        if (!(y1_ > y0_)) y1_ = y0_ + 1.0;
    }

    void rect(double xa, double xb, double ya, double yb, const char* fill) {
        const double px = sx(std::min(xa, xb)), py = sy(std::max(ya, yb));
        const double w = std::max(0.5, std::abs(sx(xb) - sx(xa)));
        const double h = std::max(0.5, std::abs(sy(yb) - sy(ya)));
        body_ += fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\"/>\n", px, py, w, h, fill);
    }

    void line(double xa, double ya, double xb, double yb, const char* stroke, double width = 1.0) {
        body_ += fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                     sx(xa), sy(ya), sx(xb), sy(yb), stroke, width);
    }

    void dot(double x, double y, const char* fill, double r = 3.0) {
        body_ += fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n", sx(x), sy(y), r, fill);
    }

    std::string str(const std::string& title) const {
        std::string s = fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %d %d\" width=\"%d\" height=\"%d\">\n",
                            kWidth, kHeight, kWidth, kHeight);
        s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        s += fmt("<text x=\"%d\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">%s</text>\n",
                 kWidth / 2, escape(title).c_str());
        s += fmt("<clipPath id=\"frame\"><rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\"/></clipPath>\n", kLeft,
                 kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
        s += "<g clip-path=\"url(#frame)\">\n" + body_ + "</g>\n";
        // Frame and tick labels at the range ends.
        s += fmt("<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" stroke=\"black\"/>\n", kLeft, kTop,
                 kWidth - kLeft - kRight, kHeight - kTop - kBottom);
        const int yb = kHeight - kBottom;
        s += label(kLeft, yb + 16, "middle", num(x0_));
        s += label(kWidth - kRight, yb + 16, "middle", num(x1_));
        s += label(kLeft - 6, yb, "end", num(y0_));
        s += label(kLeft - 6, kTop + 10, "end", num(y1_));
        s += label((kLeft + kWidth - kRight) / 2, kHeight - 10, "middle", x_label_);
        s += fmt("<text x=\"16\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
                 "transform=\"rotate(-90 16 %d)\">%s</text>\n",
                 (kTop + yb) / 2, (kTop + yb) / 2, escape(y_label_).c_str());
        s += "</svg>\n";
        return s;
    }

private:
    static constexpr int kWidth = 800, kHeight = 600, kLeft = 70, kRight = 20, kTop = 30, kBottom = 50;

    double sx(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
    double sy(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }

    template <typename... A>
    static std::string fmt(const char* f, A... a) {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, a...);
        return buf;
    }

    static std::string num(double v) { return fmt("%.4g", v); }

    static std::string escape(const std::string& in) {
        std::string out;
        for (char c : in) {
            if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else if (c == '&') out += "&amp;";
            else out += c;
        }
        return out;
    }

    static std::string label(int x, int y, const char* anchor, const std::string& text) {
        return fmt("<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"%s\">%s</text>\n", x,
                   y, anchor, escape(text).c_str());
    }

    double x0_, x1_, y0_, y1_;
    std::string x_label_, y_label_;
    std::string body_;
};

}  // namespace qgcli
