#include "panolayout/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace panolayout {

namespace {

double column_longitude(int col, int width) {
    return 2.0 * kPi * (col + 0.5) / width - kPi;
}

double fold_quarter(double angle) {
    // deviation from the nearest Manhattan axis, in [-pi/4, pi/4)
    double t = std::remainder(angle, kPi / 2.0);
    if (t >= kPi / 4.0) t -= kPi / 2.0;
    return t;
}

}  // namespace

PeakList detect_peaks(const std::vector<double>& score, double window_deg, double threshold) {
    const int w = static_cast<int>(score.size());
    if (w <= 0) throw DomainError("peak detection needs a nonempty signal");
    int radius = static_cast<int>(std::lround(w * window_deg / 360.0));
    radius = std::max(radius, 1);
    radius = std::min(radius, w - 1);

    PeakList peaks;
    for (int i = 0; i < w; ++i) {
        if (!(score[i] > threshold)) continue;
        bool peak = true;
        for (int d = 1; d <= radius && peak; ++d) {
            const int up = (i + d) % w;
            const int dn = (i - d + w) % w;
            // weak on the upper side, strict on the lower side: a plateau
            // keeps exactly its lowest column
            if (!(score[i] >= score[up]) || !(score[i] > score[dn])) peak = false;
        }
        if (peak) peaks.push_back({i, score[i]});
    }
    return peaks;
}

PlaneHeights recover_heights(const BoundarySignals& signals, double camera_height) {
    const int w = signals.width();
    if (w == 0) throw DomainError("height recovery needs nonempty signals");
    if (!(camera_height > 0.0)) throw DomainError("camera height must be positive");
    double sum = 0.0;
    for (int i = 0; i < w; ++i) {
        const double vf = signals.floor[i];
        const double vc = signals.ceiling[i];
        if (!(vf > 0.0) || !(vc < 0.0)) {
            throw ValidationError("column " + std::to_string(i) +
                                  ": floor boundary must be positive and ceiling negative");
        }
        const double r = camera_height / std::tan(vf);
        sum += r * std::tan(-vc);
    }
    return {camera_height, -(sum / w)};
}

void fit_principal_axis(WallSegment& segment) {
    const int n = static_cast<int>(segment.points.size());
    if (n < 2) {
        segment.degenerate = true;
        segment.direction_angle = 0.0;
        segment.residual_variance = std::numeric_limits<double>::infinity();
        return;
    }
    segment.degenerate = false;
    double mx = 0.0, mz = 0.0;
    for (const PlanePoint& p : segment.points) {
        mx += p.x;
        mz += p.z;
    }
    mx /= n;
    mz /= n;
    double sxx = 0.0, sxz = 0.0, szz = 0.0;
    for (const PlanePoint& p : segment.points) {
        const double dx = p.x - mx;
        const double dz = p.z - mz;
        sxx += dx * dx;
        sxz += dx * dz;
        szz += dz * dz;
    }
    sxx /= n;
    sxz /= n;
    szz /= n;
    const double half_tr = (sxx + szz) / 2.0;
    const double det = sxx * szz - sxz * sxz;
    const double disc = std::sqrt(std::max(0.0, half_tr * half_tr - det));
    const double lmax = half_tr + disc;
    const double lmin = half_tr - disc;

    double ex = sxz, ez = lmax - sxx;
    const double ax = lmax - szz, az = sxz;
    if (ax * ax + az * az > ex * ex + ez * ez) {
        ex = ax;
        ez = az;
    }
    if (ex == 0.0 && ez == 0.0) ex = 1.0;  // isotropic cloud

    const double theta = std::atan2(ez, ex);
    segment.direction_angle = fold_quarter(theta);
    // folded into [-pi/2, pi/2): within pi/4 of the X axis means the wall
    // runs along X, so its plane is z = const
    const double half = std::remainder(theta, kPi);
    segment.preferred_axis = (std::abs(half) <= kPi / 4.0) ? 1 : 0;
    segment.residual_variance = std::max(lmin, 0.0);
}

std::vector<WallSegment> split_segments(const BoundarySignals& signals, const PeakList& peaks,
                                        double ceiling_y) {
    const int w = signals.width();
    const int n = static_cast<int>(peaks.size());
    if (n == 0) throw DomainError("segmentation needs at least one peak");
    if (!(ceiling_y < 0.0)) throw DomainError("ceiling plane must lie above the camera");

    std::vector<WallSegment> segments(n);
    for (int j = 0; j < n; ++j) {
        const int start = peaks[j].column;
        const int end = peaks[(j + 1) % n].column;
        int count = (end - start + w) % w;
        if (count == 0) count = w;
        WallSegment& seg = segments[j];
        seg.first_column = start;
        seg.column_count = count;
        seg.points.reserve(count);
        // the peak column itself straddles two walls; leave it out
        for (int t = 1; t < count; ++t) {
            const int col = (start + t) % w;
            const Uv uv{column_longitude(col, w), signals.ceiling[col]};
            seg.points.push_back(project_to_horizontal_plane(uv, ceiling_y));
        }
        fit_principal_axis(seg);
    }
    return segments;
}

RotationEstimate estimate_rotation(const std::vector<WallSegment>& segments) {
    if (segments.empty()) throw DomainError("rotation estimate needs at least one segment");
    double c = 0.0, s = 0.0;
    bool any = false;
    for (const WallSegment& seg : segments) {
        if (seg.degenerate) continue;
        const double weight = static_cast<double>(seg.points.size());
        c += weight * std::cos(4.0 * seg.direction_angle);
        s += weight * std::sin(4.0 * seg.direction_angle);
        any = true;
    }
    if (!any || (c == 0.0 && s == 0.0)) return {0.0, false};
    return {std::atan2(s, c) / 4.0, true};
}

namespace {

struct WallPlane {
    int axis = -1;  // 0: plane x = offset, 1: plane z = offset
    double offset = 0.0;
    bool built = false;
    bool corner_case = false;
};

// Most voted 0.01 m grid candidate; ties go to the candidate nearest the
// coordinate median, then to the lower candidate.
double vote_offset(std::vector<double> coords) {
    std::sort(coords.begin(), coords.end());
    const double median = coords[(coords.size() - 1) / 2];
    const long k_lo = static_cast<long>(std::floor(coords.front() / kVoteGridStep));
    const long k_hi = static_cast<long>(std::ceil(coords.back() / kVoteGridStep));
    double best_offset = k_lo * kVoteGridStep;
    std::size_t best_votes = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (long k = k_lo; k <= k_hi; ++k) {
        const double cand = k * kVoteGridStep;
        const auto lo = std::lower_bound(coords.begin(), coords.end(), cand - kVoteRadius);
        const auto hi = std::upper_bound(coords.begin(), coords.end(), cand + kVoteRadius);
        const std::size_t votes = static_cast<std::size_t>(hi - lo);
        const double dist = std::abs(cand - median);
        if (votes > best_votes || (votes == best_votes && dist < best_dist)) {
            best_votes = votes;
            best_dist = dist;
            best_offset = cand;
        }
    }
    return best_offset;
}

PlanePoint ray_hits_wall(double longitude, const WallPlane& wall) {
    const double c = std::cos(longitude);
    const double s = std::sin(longitude);
    if (wall.axis == 0) {
        if (std::abs(c) < 1e-12 || wall.offset / c <= 0.0) {
            throw ReconstructionError("wall_assembly",
                                      "peak ray cannot reach the adjacent wall plane");
        }
        return {wall.offset, wall.offset / c * s};
    }
    if (std::abs(s) < 1e-12 || wall.offset / s <= 0.0) {
        throw ReconstructionError("wall_assembly",
                                  "peak ray cannot reach the adjacent wall plane");
    }
    return {wall.offset / s * c, wall.offset};
}

std::vector<PlanePoint> cleanup_polygon(std::vector<PlanePoint> poly) {
    constexpr double kSnap = 1e-9;
    // drop duplicate consecutive vertices
    std::vector<PlanePoint> dedup;
    for (const PlanePoint& p : poly) {
        if (!dedup.empty() && length(p - dedup.back()) < kSnap) continue;
        dedup.push_back(p);
    }
    while (dedup.size() > 1 && length(dedup.front() - dedup.back()) < kSnap) dedup.pop_back();

    // merge collinear runs (axis-aligned edges sharing the axis)
    bool changed = true;
    while (changed && dedup.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < dedup.size(); ++i) {
            const PlanePoint a = dedup[(i + dedup.size() - 1) % dedup.size()];
            const PlanePoint b = dedup[i];
            const PlanePoint c = dedup[(i + 1) % dedup.size()];
            const bool in_x = std::abs(a.z - b.z) < kSnap;
            const bool out_x = std::abs(b.z - c.z) < kSnap;
            const bool in_z = std::abs(a.x - b.x) < kSnap;
            const bool out_z = std::abs(b.x - c.x) < kSnap;
            if ((in_x && out_x) || (in_z && out_z)) {
                dedup.erase(dedup.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return dedup;
}

}  // namespace

ManhattanLayout build_walls(const std::vector<WallSegment>& segments,
                            const std::vector<double>& peak_longitudes,
                            const PlaneHeights& heights, double camera_height) {
    const int n = static_cast<int>(segments.size());
    if (n < 4) {
        throw ReconstructionError("wall_construction",
                                  "needs at least 4 segments, got " + std::to_string(n));
    }
    if (static_cast<int>(peak_longitudes.size()) != n) {
        throw DomainError("one peak longitude per segment required");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return segments[a].residual_variance < segments[b].residual_variance;
    });

    std::vector<WallPlane> walls(n);
    for (int idx : order) {
        const WallSegment& seg = segments[idx];
        const int prev = (idx + n - 1) % n;
        const int next = (idx + 1) % n;
        const bool prev_built = walls[prev].built;
        const bool next_built = walls[next].built;

        int axis;
        if (prev_built && next_built) {
            if (walls[prev].axis != walls[next].axis) {
                // both neighbors stand and are orthogonal: no wall fits here;
                // corners get placed from the bracketing peak rays instead
                walls[idx].corner_case = true;
                continue;
            }
            axis = 1 - walls[prev].axis;
        } else if (prev_built) {
            axis = 1 - walls[prev].axis;
        } else if (next_built) {
            axis = 1 - walls[next].axis;
        } else {
            axis = seg.preferred_axis;
        }

        if (seg.points.empty()) {
            throw ReconstructionError("wall_construction",
                                      "segment " + std::to_string(idx) + " has no points");
        }
        std::vector<double> coords;
        coords.reserve(seg.points.size());
        for (const PlanePoint& p : seg.points) coords.push_back(axis == 0 ? p.x : p.z);
        walls[idx].axis = axis;
        walls[idx].offset = vote_offset(std::move(coords));
        walls[idx].built = true;
    }

    std::vector<PlanePoint> poly;
    for (int j = 0; j < n; ++j) {
        const int prev = (j + n - 1) % n;
        if (walls[j].corner_case) {
            const WallPlane& a = walls[prev];
            const WallPlane& b = walls[(j + 1) % n];
            const PlanePoint c0 = ray_hits_wall(peak_longitudes[j], a);
            const PlanePoint c1 = ray_hits_wall(peak_longitudes[(j + 1) % n], b);
            PlanePoint mid;
            mid.x = (a.axis == 0) ? c1.x : c0.x;
            mid.z = (a.axis == 0) ? c0.z : c1.z;
            poly.push_back(c0);
            poly.push_back(mid);
            poly.push_back(c1);
            continue;
        }
        if (walls[prev].corner_case) continue;  // the peak was consumed by c1 above
        const WallPlane& a = walls[prev];
        const WallPlane& b = walls[j];
        if (a.axis == b.axis) {
            if (std::abs(a.offset - b.offset) < 1e-9) continue;  // collinear, merged walls
            throw ReconstructionError("wall_assembly",
                                      "adjacent parallel walls at different offsets");
        }
        poly.push_back(a.axis == 0 ? PlanePoint{a.offset, b.offset}
                                   : PlanePoint{b.offset, a.offset});
    }

    ManhattanLayout layout;
    layout.floor_polygon = cleanup_polygon(std::move(poly));
    layout.camera_height = camera_height;
    layout.ceiling_height = camera_height - heights.ceiling_y;
    try {
        layout.validate();
    } catch (const ValidationError& e) {
        throw ReconstructionError("wall_assembly", e.what());
    }
    return layout;
}

namespace {

// Sub-3-column segments are peak-localization noise; fold each into its
// smaller-variance neighbor and drop the peak between them.
void merge_short_segments(std::vector<WallSegment>& segments, PeakList& peaks) {
    while (segments.size() > 4) {
        int victim = -1;
        const int n = static_cast<int>(segments.size());
        for (int j = 0; j < n; ++j) {
            if (segments[j].column_count < 3) {
                victim = j;
                break;
            }
        }
        if (victim < 0) return;
        const int prev = (victim + n - 1) % n;
        const int next = (victim + 1) % n;
        const bool into_prev =
            segments[prev].residual_variance <= segments[next].residual_variance;
        if (into_prev) {
            WallSegment& dst = segments[prev];
            WallSegment& src = segments[victim];
            dst.column_count += src.column_count;
            dst.points.insert(dst.points.end(), src.points.begin(), src.points.end());
            fit_principal_axis(dst);
            segments.erase(segments.begin() + victim);
            peaks.erase(peaks.begin() + victim);
        } else {
            WallSegment& dst = segments[next];
            WallSegment& src = segments[victim];
            dst.first_column = src.first_column;
            dst.column_count += src.column_count;
            dst.points.insert(dst.points.begin(), src.points.begin(), src.points.end());
            fit_principal_axis(dst);
            // the peak between victim and next is peaks[next]
            segments.erase(segments.begin() + victim);
            peaks.erase(peaks.begin() + next);
        }
    }
}

}  // namespace

namespace {

// Keeps the four most prominent peaks. Score ties at the cut are broken by
// maximizing the minimum pairwise circular distance of the chosen four (an
// exact ground-truth encoding scores every corner 1.0), then by column.
PeakList select_cuboid_peaks(PeakList peaks, int width) {
    if (peaks.size() <= 4) return peaks;
    std::vector<int> order(peaks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return peaks[a].score > peaks[b].score;
    });
    const double cutoff = peaks[order[3]].score;

    std::vector<int> chosen, tied;
    for (int idx : order) {
        if (peaks[idx].score > cutoff) {
            chosen.push_back(idx);
        } else if (peaks[idx].score == cutoff) {
            tied.push_back(idx);
        }
    }
    std::sort(tied.begin(), tied.end());
    const int need = 4 - static_cast<int>(chosen.size());

    const auto min_pair_distance = [&](const std::vector<int>& sel) {
        int best = width;
        for (std::size_t i = 0; i < sel.size(); ++i) {
            for (std::size_t j = i + 1; j < sel.size(); ++j) {
                const int d = std::abs(peaks[sel[i]].column - peaks[sel[j]].column);
                best = std::min(best, std::min(d, width - d));
            }
        }
        return best;
    };

    std::vector<int> combo(need), best_combo;
    int best_spread = -1;
    const int m = static_cast<int>(tied.size());
    const auto recurse = [&](auto&& self, int start, int depth) -> void {
        if (depth == need) {
            std::vector<int> sel = chosen;
            for (int c : combo) sel.push_back(c);
            const int spread = min_pair_distance(sel);
            if (spread > best_spread) {
                best_spread = spread;
                best_combo = combo;
            }
            return;
        }
        for (int i = start; i <= m - (need - depth); ++i) {
            combo[depth] = tied[i];
            self(self, i + 1, depth + 1);
        }
    };
    recurse(recurse, 0, 0);

    std::vector<int> sel = chosen;
    for (int c : best_combo) sel.push_back(c);
    std::sort(sel.begin(), sel.end());
    PeakList out;
    for (int idx : sel) out.push_back(peaks[idx]);
    return out;
}

}  // namespace

ReconstructResult reconstruct(const BoundarySignals& signals, ReconstructMode mode,
                              double camera_height) {
    try {
        signals.validate();
    } catch (const ValidationError& e) {
        throw ReconstructionError("input_validation", e.what());
    }
    const int w = signals.width();

    PeakList peaks = detect_peaks(signals.corner);
    if (mode == ReconstructMode::kCuboid) {
        peaks = select_cuboid_peaks(std::move(peaks), w);
    }
    if (peaks.size() < 4) {
        throw ReconstructionError("peak_detection", "fewer than 4 peaks (found " +
                                                        std::to_string(peaks.size()) + ")");
    }

    PlaneHeights heights;
    try {
        heights = recover_heights(signals, camera_height);
    } catch (const Error& e) {
        throw ReconstructionError("height_recovery", e.what());
    }

    std::vector<WallSegment> segments = split_segments(signals, peaks, heights.ceiling_y);
    merge_short_segments(segments, peaks);
    if (peaks.size() < 4) {
        throw ReconstructionError("segmentation", "fewer than 4 segments after merging");
    }

    const RotationEstimate rot = estimate_rotation(segments);

    std::vector<WallSegment> aligned = segments;
    for (WallSegment& seg : aligned) {
        for (PlanePoint& p : seg.points) p = rotated(p, -rot.angle);
        fit_principal_axis(seg);
    }
    std::vector<double> peak_longitudes;
    peak_longitudes.reserve(peaks.size());
    for (const Peak& p : peaks) {
        peak_longitudes.push_back(column_longitude(p.column, w) - rot.angle);
    }

    ReconstructResult result;
    result.layout = build_walls(aligned, peak_longitudes, heights, camera_height);
    result.rotation = rot.angle;
    result.peaks = std::move(peaks);
    return result;
}

}  // namespace panolayout
