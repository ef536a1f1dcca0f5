#include "qhgeo/emit.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace qhgeo {

namespace {

constexpr const char* kEol = "\r\n";

// stroke colours for balls and paths, cycled
constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

void write_point_row(std::ostream& os, const Point& p) {
    for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? "," : "") << format_double(p[i]);
}

void header_coords(std::ostream& os, const std::string& prefix, std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i) os << (i ? "," : "") << prefix << i;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

// Sutherland-Hodgman: keep the part of `poly` with a.x + b <= 0.
std::vector<Point> clip(const std::vector<Point>& poly, const HalfSpace& h) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        const double fp = dot(h.normal, p) + h.offset;
        const double fq = dot(h.normal, q) + h.offset;
        if (fp <= 0.0) out.push_back(p);
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) out.push_back(lerp(p, q, fp / (fp - fq)));
    }
    return out;
}

std::vector<Point> rect(const Point& lo, const Point& hi) {
    return {{lo[0], lo[1]}, {hi[0], lo[1]}, {hi[0], hi[1]}, {lo[0], hi[1]}};
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string slug(const std::string& s) {
    std::string out;
    for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
    return out;
}

}  // namespace

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_csv(std::ostream& os, const BallTrace& trace) {
    os << "angle,t_star,x0,x1" << kEol;
    for (const TracedRay& r : trace.rays) {
        os << format_double(r.angle) << ',' << format_double(r.t_star) << ',';
        write_point_row(os, r.boundary);
        os << kEol;
    }
}

void write_csv(std::ostream& os, const Polyline& path) {
    header_coords(os, "x", path.dim());
    os << kEol;
    for (const Point& p : path.vertices()) {
        write_point_row(os, p);
        os << kEol;
    }
}

void write_csv(std::ostream& os, const CheckReport& report) {
    const std::size_t dim = report.violations.empty() ? 2 : report.violations.front().point.dim();
    header_coords(os, "y", dim);
    os << ',';
    header_coords(os, "z", dim);
    os << ",s,";
    header_coords(os, "p", dim);
    os << ",distance,excess" << kEol;
    for (const Violation& v : report.violations) {
        write_point_row(os, v.y);
        os << ',';
        write_point_row(os, v.z);
        os << ',' << format_double(v.s) << ',';
        write_point_row(os, v.point);
        os << ',' << format_double(v.distance) << ',' << format_double(v.excess) << kEol;
    }
}

void write_csv(std::ostream& os, const ReportDocument& doc) {
    os << "kind,name,value,detail" << kEol;
    os << "experiment," << csv_field(doc.experiment()) << ",," << kEol;
    for (const auto& [k, v] : doc.inputs()) os << "input," << csv_field(k) << ',' << csv_field(v) << ',' << kEol;
    for (const auto& [k, v] : doc.quantities()) os << "quantity," << csv_field(k) << ',' << format_double(v) << ',' << kEol;
    for (const Verdict& v : doc.verdicts()) {
        os << "verdict," << csv_field(v.name) << ',' << (v.passed ? "pass" : "fail") << ','
           << csv_field(v.quantity + ' ' + to_string(v.relation) + ' ' + format_double(v.threshold)) << kEol;
    }
    for (std::size_t i = 0; i < doc.witnesses().size(); ++i)
        os << "witness," << i << ',' << csv_field(doc.witnesses()[i]) << ',' << kEol;
    for (const auto& [k, v] : doc.conclusions()) os << "conclusion," << csv_field(k) << ',' << csv_field(v) << ',' << kEol;
}

template <class T>
void emit_csv(const T& item, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    write_csv(out, item);
    finish(out, path);
}

template void emit_csv<BallTrace>(const BallTrace&, const std::filesystem::path&);
template void emit_csv<Polyline>(const Polyline&, const std::filesystem::path&);
template void emit_csv<CheckReport>(const CheckReport&, const std::filesystem::path&);
template void emit_csv<ReportDocument>(const ReportDocument&, const std::filesystem::path&);

void SvgScene::add_domain(const Domain& domain) {
    if (domain.dim() != 2) throw std::invalid_argument("svg scenes are planar");
    const std::vector<Point> view = rect({vp_.xmin, vp_.ymin}, {vp_.xmax, vp_.ymax});
    if (const auto* ps = domain.as<PuncturedSpace>()) {
        for (const Point& z : ps->punctures) items_.push_back({Kind::Boundary, {z}, "", false});
    } else if (const auto* h = domain.as<HalfSpace>()) {
        items_.push_back({Kind::Boundary, clip(view, *h), "", true});
    } else if (const auto* cp = domain.as<ConvexPolytope>()) {
        std::vector<Point> poly = view;
        for (const HalfSpace& f : cp->faces) poly = clip(poly, f);
        items_.push_back({Kind::Boundary, poly, "", true});
    } else if (const auto* nb = domain.as<NotchedBox>()) {
        items_.push_back({Kind::Boundary, rect(nb->lower, nb->upper), "", true});
        items_.push_back({Kind::Boundary, rect(nb->notch_lower, nb->notch_upper), "", true});
    }
}

void SvgScene::add_ball(const BallTrace& trace, const std::string& label) {
    std::vector<Point> pts;
    for (const TracedRay& r : trace.rays) pts.push_back(r.boundary);
    items_.push_back({Kind::Ball, std::move(pts), label, true});
}

void SvgScene::add_path(const Polyline& path, const std::string& label) {
    items_.push_back({Kind::Path, path.vertices(), label, false});
}

void SvgScene::add_point(const Point& p, const std::string& label) {
    items_.push_back({Kind::Marker, {p}, label, false});
}

std::string SvgScene::document() const {
    const double w = vp_.xmax - vp_.xmin;
    const double h = vp_.ymax - vp_.ymin;
    if (!(w > 0.0 && h > 0.0 && vp_.width_px > 0.0)) throw std::invalid_argument("empty viewport");
    const double scale = vp_.width_px / w;
    const double height_px = h * scale;
    auto sx = [&](double x) { return format_double((x - vp_.xmin) * scale); };
    auto sy = [&](double y) { return format_double((vp_.ymax - y) * scale); };
    auto coords = [&](const std::vector<Point>& pts) {
        std::string s;
        for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + sx(pts[i][0]) + "," + sy(pts[i][1]);
        return s;
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format_double(vp_.width_px)
       << "\" height=\"" << format_double(height_px) << "\" viewBox=\"0 0 " << format_double(vp_.width_px) << ' '
       << format_double(height_px) << "\">\n";
    std::size_t ball = 0, path = 0;
    for (const Item& it : items_) {
        std::string shape;
        const char* colour = "#000000";
        switch (it.kind) {
            case Kind::Boundary:
                if (it.points.size() == 1) {
                    const std::string cx = sx(it.points[0][0]), cy = sy(it.points[0][1]);
                    shape = "<circle cx=\"" + cx + "\" cy=\"" + cy +
                            "\" r=\"3\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>";
                } else {
                    shape = "<polygon points=\"" + coords(it.points) +
                            "\" fill=\"#f2f2f2\" stroke=\"#000000\" stroke-width=\"1\"/>";
                }
                break;
            case Kind::Ball:
                colour = kPalette[ball++ % kPalette.size()];
                shape = "<polygon points=\"" + coords(it.points) + "\" fill=\"none\" stroke=\"" + colour +
                        "\" stroke-width=\"1.5\"/>";
                break;
            case Kind::Path:
                colour = kPalette[(path++ + 1) % kPalette.size()];
                shape = "<polyline points=\"" + coords(it.points) + "\" fill=\"none\" stroke=\"" + colour +
                        "\" stroke-width=\"1.5\"/>";
                break;
            case Kind::Marker:
                shape = "<circle cx=\"" + sx(it.points[0][0]) + "\" cy=\"" + sy(it.points[0][1]) +
                        "\" r=\"3\" fill=\"#000000\"/>";
                break;
        }
        if (it.label.empty()) {
            os << "  " << shape << '\n';
            continue;
        }
        const Point& anchor = it.points.front();
        os << "  <g class=\"labelled\" id=\"" << slug(it.label) << "\">\n"
           << "    <title>" << escape_xml(it.label) << "</title>\n"
           << "    " << shape << '\n'
           << "    <text x=\"" << format_double((anchor[0] - vp_.xmin) * scale + 5.0) << "\" y=\""
           << format_double((vp_.ymax - anchor[1]) * scale - 5.0)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(it.label) << "</text>\n"
           << "  </g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void emit_svg(const SvgScene& scene, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << scene.document();
    finish(out, path);
}

}  // namespace qhgeo
