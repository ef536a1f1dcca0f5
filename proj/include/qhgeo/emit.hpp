#pragma once

#include "qhgeo/ball.hpp"
#include "qhgeo/domain.hpp"
#include "qhgeo/paths.hpp"
#include "qhgeo/report.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhgeo {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// RFC 4180 records (CRLF line ends, fields quoted only when needed). Numbers
// use format_double, so every value round-trips.
void write_csv(std::ostream& os, const BallTrace& trace);     // angle,t_star,x0,x1
void write_csv(std::ostream& os, const Polyline& path);       // x0,x1,...
void write_csv(std::ostream& os, const CheckReport& report);  // one row per recorded violation
void write_csv(std::ostream& os, const ReportDocument& doc);  // kind,name,value,detail

// Same, to a file; throws IoError when the destination cannot be written.
template <class T>
void emit_csv(const T& item, const std::filesystem::path& path);

std::string csv_field(const std::string& s);

struct Viewport {
    double xmin = -1.0;
    double ymin = -1.0;
    double xmax = 1.0;
    double ymax = 1.0;
    double width_px = 600.0;
};

// Vector scene in world coordinates; y points up.
class SvgScene {
public:
    explicit SvgScene(Viewport vp) : vp_(vp) {}

    void add_domain(const Domain& domain);
    void add_ball(const BallTrace& trace, const std::string& label = "");
    void add_path(const Polyline& path, const std::string& label = "");
    void add_point(const Point& p, const std::string& label);

    const Viewport& viewport() const noexcept { return vp_; }
    // SVG 1.1 document. Labelled items are <g class="labelled"> groups with a
    // <title> and a <text> child.
    std::string document() const;

private:
    enum class Kind { Boundary, Ball, Path, Marker };
    struct Item {
        Kind kind;
        std::vector<Point> points;
        std::string label;
        bool closed = false;
    };

    Viewport vp_;
    std::vector<Item> items_;
};

void emit_svg(const SvgScene& scene, const std::filesystem::path& path);

}  // namespace qhgeo
