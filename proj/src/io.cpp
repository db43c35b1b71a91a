#include "panolayout/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace panolayout {

namespace {

constexpr const char* kSignalsMagic = "panolayout-signals";
constexpr const char* kSignalsBinMagic = "panolayout-signals-bin";
constexpr const char* kLayoutMagic = "panolayout-layout";

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

void write_array(std::ostream& out, const char* name, const std::vector<double>& values) {
    out << name;
    for (double v : values) out << ' ' << std::setprecision(12) << v;
    out << '\n';
}

std::vector<double> parse_array(const std::string& line, const char* name, int expected,
                                int line_no) {
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key != name) {
        throw ParseError("expected '" + std::string(name) + "' array, got '" + key + "'", line_no);
    }
    std::vector<double> values;
    values.reserve(expected);
    double v;
    while (ss >> v) values.push_back(v);
    if (static_cast<int>(values.size()) != expected) {
        throw ParseError("'" + std::string(name) + "' has " + std::to_string(values.size()) +
                             " values, expected " + std::to_string(expected),
                         line_no);
    }
    return values;
}

void write_doubles_le(std::ostream& out, const std::vector<double>& values) {
    // files are interchanged between little-endian hosts
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::vector<double> read_doubles_le(std::istream& in, int count) {
    std::vector<double> values(count);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(values.size() * sizeof(double))) {
        throw ParseError("truncated binary signal data");
    }
    return values;
}

}  // namespace

void write_signals_file(const std::filesystem::path& path, const BoundarySignals& signals,
                        double decay, std::string_view provenance, bool binary) {
    signals.validate();
    if (!(decay > 0.0 && decay < 1.0)) throw DomainError("decay constant must lie in (0, 1)");
    std::ofstream out = open_out(path, binary);
    out << (binary ? kSignalsBinMagic : kSignalsMagic) << " 1\n";
    out << "width " << signals.width() << '\n';
    out << "decay " << std::setprecision(12) << decay << '\n';
    if (!provenance.empty()) out << "provenance " << provenance << '\n';
    if (binary) {
        out << "data\n";
        write_doubles_le(out, signals.ceiling);
        write_doubles_le(out, signals.floor);
        write_doubles_le(out, signals.corner);
    } else {
        write_array(out, "ceiling", signals.ceiling);
        write_array(out, "floor", signals.floor);
        write_array(out, "corner", signals.corner);
    }
    if (!out) throw Error("failed writing " + path.string());
}

SignalsDocument read_signals_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    int line_no = 0;

    const auto next_line = [&]() {
        if (!std::getline(in, line)) throw ParseError("unexpected end of file", line_no);
        ++line_no;
        return line;
    };

    next_line();
    std::istringstream header(line);
    std::string magic;
    int version = 0;
    header >> magic >> version;
    const bool binary = (magic == kSignalsBinMagic);
    if ((!binary && magic != kSignalsMagic) || version != 1) {
        throw ParseError("not a panolayout signals file (bad header '" + line + "')", line_no);
    }

    SignalsDocument doc;
    int width = -1;
    while (true) {
        next_line();
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "width") {
            if (!(ss >> width) || width <= 0) throw ParseError("bad width", line_no);
        } else if (key == "decay") {
            if (!(ss >> doc.decay)) throw ParseError("bad decay constant", line_no);
        } else if (key == "provenance") {
            std::getline(ss, doc.provenance);
            if (!doc.provenance.empty() && doc.provenance.front() == ' ') {
                doc.provenance.erase(doc.provenance.begin());
            }
        } else if (key == (binary ? "data" : "ceiling")) {
            break;
        } else {
            throw ParseError("unknown header field '" + key + "'", line_no);
        }
    }
    if (width <= 0) throw ParseError("missing width field", line_no);

    if (binary) {
        doc.signals.ceiling = read_doubles_le(in, width);
        doc.signals.floor = read_doubles_le(in, width);
        doc.signals.corner = read_doubles_le(in, width);
    } else {
        doc.signals.ceiling = parse_array(line, "ceiling", width, line_no);
        doc.signals.floor = parse_array(next_line(), "floor", width, line_no);
        doc.signals.corner = parse_array(next_line(), "corner", width, line_no);
    }
    try {
        doc.signals.validate();
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid signals: ") + e.what());
    }
    return doc;
}

void write_layout_file(const std::filesystem::path& path, const ManhattanLayout& layout) {
    layout.validate();
    std::ofstream out = open_out(path, false);
    out << kLayoutMagic << " 1\n";
    out << std::setprecision(12);
    out << "camera_height " << layout.camera_height << '\n';
    out << "ceiling_height " << layout.ceiling_height << '\n';
    out << "corners " << layout.floor_polygon.size() << '\n';
    for (const PlanePoint& p : layout.floor_polygon) {
        out << p.x << ' ' << p.z << '\n';
    }
    if (!out) throw Error("failed writing " + path.string());
}

ManhattanLayout read_layout_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    int line_no = 0;
    const auto next_line = [&]() {
        if (!std::getline(in, line)) throw ParseError("unexpected end of file", line_no);
        ++line_no;
        return line;
    };

    next_line();
    {
        std::istringstream ss(line);
        std::string magic;
        int version = 0;
        ss >> magic >> version;
        if (magic != kLayoutMagic || version != 1) {
            throw ParseError("not a panolayout layout file (bad header '" + line + "')", line_no);
        }
    }

    ManhattanLayout layout;
    int corners = -1;
    while (corners < 0) {
        next_line();
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "camera_height") {
            if (!(ss >> layout.camera_height)) throw ParseError("bad camera_height", line_no);
        } else if (key == "ceiling_height") {
            if (!(ss >> layout.ceiling_height)) throw ParseError("bad ceiling_height", line_no);
        } else if (key == "corners") {
            if (!(ss >> corners) || corners < 0) throw ParseError("bad corner count", line_no);
        } else {
            throw ParseError("unknown header field '" + key + "'", line_no);
        }
    }
    layout.floor_polygon.reserve(corners);
    for (int i = 0; i < corners; ++i) {
        next_line();
        std::istringstream ss(line);
        PlanePoint p;
        if (!(ss >> p.x >> p.z)) throw ParseError("expected 'x z' vertex line", line_no);
        layout.floor_polygon.push_back(p);
    }
    try {
        layout.validate();
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid layout: ") + e.what());
    }
    return layout;
}

void write_annotation_file(const std::filesystem::path& path,
                           const CornerAnnotation& annotation) {
    annotation.validate();
    std::ofstream out = open_out(path, false);
    out << "# column ceiling_row floor_row\n" << std::setprecision(12);
    for (const auto& c : annotation.corners) {
        out << c.column << ' ' << c.ceiling_row << ' ' << c.floor_row << '\n';
    }
    if (!out) throw Error("failed writing " + path.string());
}

CornerAnnotation read_annotation_file(const std::filesystem::path& path, const ImageGrid& grid) {
    std::ifstream in = open_in(path);
    CornerAnnotation ann;
    ann.grid = grid;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        CornerAnnotation::Corner c;
        if (!(ss >> c.column)) continue;  // blank or comment-only line
        if (!(ss >> c.ceiling_row >> c.floor_row)) {
            throw ParseError("expected 'column ceiling_row floor_row'", line_no);
        }
        ann.corners.push_back(c);
    }
    if (ann.corners.empty()) throw ParseError("annotation file has no corners");
    try {
        ann.validate();
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid annotation: ") + e.what());
    }
    return ann;
}

FileKind sniff_file_kind(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string magic;
    in >> magic;
    if (magic == kSignalsMagic || magic == kSignalsBinMagic) return FileKind::kSignals;
    if (magic == kLayoutMagic) return FileKind::kLayout;
    return FileKind::kUnknown;
}

}  // namespace panolayout
