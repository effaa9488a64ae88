#include "bigmcg/curve_oracle.hpp"

#include <algorithm>
#include <map>

#include "bigmcg/errors.hpp"

namespace bigmcg {

namespace {

using Point = OracleCurve::Point;

constexpr std::size_t kMaxVertices = 400000;

// Twist support: inner square radius A (pointwise rotation by pi), outer
// radius B (identity beyond), measured in the max norm around the midpoint
// of the two swapped punctures.
const Rational kInnerA(5, 8);
const Rational kOuterB(7, 8);
const Rational kPieceSize(1, 16);

struct Line {
    // vertical reference line x = pos; for rays the sign restricts y
    enum class Kind { wall, up, down };
    Kind kind;
    int index;     // wall k (1..n-1) or puncture j (1..n)
    Rational pos;  // x coordinate
};

std::vector<Line> reference_lines(int n) {
    std::vector<Line> lines;
    for (int k = 1; k < n; ++k)
        lines.push_back({Line::Kind::wall, k, Rational(2 * k + 1, 2)});
    for (int j = 1; j <= n; ++j) {
        lines.push_back({Line::Kind::up, j, Rational(j)});
        lines.push_back({Line::Kind::down, j, Rational(j)});
    }
    return lines;
}

std::string line_name(const Line& l) {
    switch (l.kind) {
        case Line::Kind::wall: return "W" + std::to_string(l.index);
        case Line::Kind::up: return "r" + std::to_string(l.index);
        case Line::Kind::down: return "s" + std::to_string(l.index);
    }
    return "";
}

struct Event {
    int line = -1;       // index into reference_lines(n)
    Rational y;          // height of the crossing on the line
    int direction = 0;   // +1: crossing with increasing x, -1: decreasing
    // global ordering along the curve
    std::size_t seg = 0;
    Rational t;
};

// All crossings of the closed polyline with the vertical line x = pos,
// in curve order. Runs of vertices exactly on the line are treated as one
// touch and count as a crossing only when the strict sides differ.
void collect_crossings(const std::vector<Point>& pts, const Line& line,
                       int line_id, std::vector<Event>& out) {
    const std::size_t m = pts.size();
    auto side = [&](const Point& p) {
        if (p.x < line.pos) return -1;
        if (p.x > line.pos) return 1;
        return 0;
    };
    for (std::size_t i = 0; i < m; ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % m];
        int sp = side(p);
        int sq = side(q);
        if (sp != 0 && sq != 0 && sp != sq) {
            Rational t = (line.pos - p.x) / (q.x - p.x);
            Rational y = p.y + t * (q.y - p.y);
            if (line.kind == Line::Kind::up && !(y > 0)) continue;
            if (line.kind == Line::Kind::down && !(y < 0)) continue;
            if (line.kind != Line::Kind::wall && y == 0)
                throw resource_error("curve passes through a puncture");
            out.push_back(Event{line_id, y, sq > sp ? 1 : -1, i, t});
        } else if (sq == 0 && sp != 0) {
            // vertex (or run of vertices) on the line: scan forward
            std::size_t j = (i + 1) % m;
            std::size_t steps = 0;
            while (side(pts[j]) == 0 && steps < m) {
                j = (j + 1) % m;
                ++steps;
            }
            int sr = side(pts[j]);
            if (sr != 0 && sr != sp) {
                Rational y = q.y;
                if (line.kind == Line::Kind::up && !(y > 0)) continue;
                if (line.kind == Line::Kind::down && !(y < 0)) continue;
                if (line.kind != Line::Kind::wall && y == 0)
                    throw resource_error("curve touches a puncture");
                out.push_back(Event{line_id, y, sr > sp ? 1 : -1, i, Rational(1)});
            }
        }
    }
}

std::vector<Event> crossing_sequence(int n, const std::vector<Point>& pts) {
    std::vector<Line> lines = reference_lines(n);
    std::vector<Event> events;
    for (std::size_t li = 0; li < lines.size(); ++li)
        collect_crossings(pts, lines[li], static_cast<int>(li), events);
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.seg != b.seg) return a.seg < b.seg;
        return a.t < b.t;
    });
    return events;
}

// Remove bigons: adjacent crossings of the same line cancel (the arc between
// them crosses nothing and the complementary cells contain no punctures).
void reduce_events(std::vector<Event>& ev) {
    bool changed = true;
    while (changed && ev.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            std::size_t j = (i + 1) % ev.size();
            if (i != j && ev[i].line == ev[j].line) {
                if (j > i) {
                    ev.erase(ev.begin() + j);
                    ev.erase(ev.begin() + i);
                } else {
                    ev.erase(ev.begin() + i);
                    ev.erase(ev.begin() + j);
                }
                changed = true;
                break;
            }
        }
    }
}

// Redraw the reduced curve through canonically placed ports.
std::vector<Point> redraw(int n, const std::vector<Event>& ev) {
    std::vector<Line> lines = reference_lines(n);
    if (ev.empty()) {
        // contractible curve; park it in the leftmost cell
        return {Point{Rational(1, 4), Rational(1, 8)},
                Point{Rational(3, 8), Rational(1, 8)},
                Point{Rational(3, 8), Rational(1, 4)},
                Point{Rational(1, 4), Rational(1, 4)}};
    }
    // canonical port per event: rank among the events of its line, ordered
    // by the true crossing height
    std::map<int, std::vector<std::size_t>> by_line;
    for (std::size_t e = 0; e < ev.size(); ++e)
        by_line[ev[e].line].push_back(e);
    std::vector<Point> port(ev.size());
    std::vector<int> rank(ev.size(), 0);
    std::vector<int> line_count(ev.size(), 1);
    for (auto& [line_id, idxs] : by_line) {
        std::sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
            return ev[a].y < ev[b].y;
        });
        const Line& line = lines[line_id];
        const int m = static_cast<int>(idxs.size());
        for (int r = 0; r < m; ++r) {
            Rational frac(r + 1, m + 1);
            Rational y;
            switch (line.kind) {
                case Line::Kind::wall:
                    y = Rational(-1, 2) + frac;  // in (-1/2, 1/2)
                    break;
                case Line::Kind::up:
                    y = Rational(1, 4) + frac / 2;  // in (1/4, 3/4)
                    break;
                case Line::Kind::down:
                    y = Rational(-1, 4) - frac / 2;
                    break;
            }
            port[idxs[r]] = Point{line.pos, y};
            rank[idxs[r]] = r;
            line_count[idxs[r]] = m;
        }
    }
    std::vector<Point> out;
    out.reserve(2 * ev.size());
    for (std::size_t e = 0; e < ev.size(); ++e) {
        const Event& cur = ev[e];
        const Event& nxt = ev[(e + 1) % ev.size()];
        out.push_back(port[e]);
        const Line& lc = lines[cur.line];
        const Line& ln = lines[nxt.line];
        bool same_ray_pair = lc.kind != Line::Kind::wall &&
                             ln.kind != Line::Kind::wall &&
                             lc.index == ln.index;
        if (same_ray_pair) {
            // turn around the puncture; the side is where the curve heads
            // after the current crossing
            int side = cur.direction;
            int r = std::min(rank[e], rank[(e + 1) % ev.size()]);
            int m = std::max(line_count[e], line_count[(e + 1) % ev.size()]);
            Rational offset = Rational(1, 8) +
                              Rational(r + 1) / Rational(4 * (m + 2));
            out.push_back(Point{lc.pos + side * offset, Rational(0)});
        }
    }
    return out;
}

// ---- the half-twist as an exact plane homeomorphism ----

// counterclockwise walk along the square ||p-m||_inf = d by arc length L>=0
Point square_walk(Point p, const Point& m, const Rational& d, Rational L) {
    Rational perimeter = 8 * d;
    L = L - (L / perimeter).convert_to<BigInt>() * perimeter;
    if (L < 0) L += perimeter;
    while (L > 0) {
        Rational dx = p.x - m.x;
        Rational dy = p.y - m.y;
        Rational to_corner;
        int sidecase;
        if (dx == d && dy < d) {         // right side, heading +y
            to_corner = d - dy;
            sidecase = 0;
        } else if (dy == d && dx > -d) { // top side, heading -x
            to_corner = dx + d;
            sidecase = 1;
        } else if (dx == -d && dy > -d) { // left side, heading -y
            to_corner = dy + d;
            sidecase = 2;
        } else {                          // bottom side, heading +x
            to_corner = d - dx;
            sidecase = 3;
        }
        Rational step = L < to_corner ? L : to_corner;
        switch (sidecase) {
            case 0: p.y += step; break;
            case 1: p.x -= step; break;
            case 2: p.y -= step; break;
            case 3: p.x += step; break;
        }
        L -= step;
    }
    return p;
}

Point apply_half_twist(const Point& p, const Point& center, int direction) {
    Rational dx = p.x - center.x;
    Rational dy = p.y - center.y;
    Rational d = std::max(abs(dx), abs(dy));
    if (d >= kOuterB) return p;
    if (d <= kInnerA)
        return Point{2 * center.x - p.x, 2 * center.y - p.y};
    // interpolating ring: rotate by lambda * pi, walked along the square
    Rational lambda = (kOuterB - d) / (kOuterB - kInnerA);
    Rational advance = lambda * 4 * d;  // half the perimeter times lambda
    if (direction < 0) advance = 8 * d - advance;
    return square_walk(p, center, d, advance);
}

// split segments near the twist support so every mapped piece is short
std::vector<Point> subdivide_near(const std::vector<Point>& pts,
                                  const Point& center) {
    const Rational reach = kOuterB + Rational(1, 4);
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % pts.size()];
        out.push_back(p);
        Rational dp = std::max(abs(p.x - center.x), abs(p.y - center.y));
        Rational dq = std::max(abs(q.x - center.x), abs(q.y - center.y));
        if (dp > reach && dq > reach) continue;
        Rational extent = std::max(abs(q.x - p.x), abs(q.y - p.y));
        if (extent <= kPieceSize) continue;
        BigInt pieces = (extent / kPieceSize).convert_to<BigInt>() + 1;
        for (BigInt s = 1; s < pieces; ++s) {
            Rational t(s, pieces);
            out.push_back(Point{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
        if (out.size() > kMaxVertices)
            throw resource_error("oracle polyline grew too large");
    }
    return out;
}

} // namespace

OracleCurve OracleCurve::round(int n, const RoundCurve& c) {
    if (n < 3) throw validity_error("need at least 3 punctures");
    validate_round(c, n, /*allow_boundary=*/true);
    Rational left = Rational(c.first) - Rational(1, 4);
    Rational right = Rational(c.last) + Rational(1, 4);
    std::vector<Point> pts = {
        Point{left, Rational(1, 2)},
        Point{right, Rational(1, 2)},
        Point{right, Rational(-1, 2)},
        Point{left, Rational(-1, 2)},
    };
    return OracleCurve(n, std::move(pts));
}

std::vector<std::string> OracleCurve::word() const {
    std::vector<Event> ev = crossing_sequence(n_, points_);
    reduce_events(ev);
    std::vector<Line> lines = reference_lines(n_);
    std::vector<std::string> letters;
    for (const Event& e : ev) letters.push_back(line_name(lines[e.line]));
    if (letters.empty()) return letters;
    // canonical cyclic form: least rotation of either orientation
    auto least_rotation = [](std::vector<std::string> w) {
        std::vector<std::string> best = w;
        for (std::size_t r = 0; r < w.size(); ++r) {
            std::rotate(w.begin(), w.begin() + 1, w.end());
            if (w < best) best = w;
        }
        return best;
    };
    std::vector<std::string> fwd = least_rotation(letters);
    std::reverse(letters.begin(), letters.end());
    std::vector<std::string> rev = least_rotation(letters);
    return fwd < rev ? fwd : rev;
}

std::string OracleCurve::word_text() const {
    std::vector<std::string> w = word();
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i];
    return s;
}

MultiCurveCoords OracleCurve::coords() const {
    std::vector<Event> ev = crossing_sequence(n_, points_);
    reduce_events(ev);
    std::vector<Line> lines = reference_lines(n_);
    std::vector<BigInt> walls(n_ + 1, 0), ups(n_ + 1, 0), downs(n_ + 1, 0);
    for (const Event& e : ev) {
        const Line& l = lines[e.line];
        if (l.kind == Line::Kind::wall) ++walls[l.index];
        else if (l.kind == Line::Kind::up) ++ups[l.index];
        else ++downs[l.index];
    }
    MultiCurveCoords out = empty_multicurve(n_);
    for (int i = 1; i <= n_ - 2; ++i) {
        BigInt da = downs[i + 1] - ups[i + 1];
        BigInt db = walls[i] - walls[i + 1];
        if (da % 2 != 0 || db % 2 != 0)
            throw resource_error("odd crossing parity; curve not reduced");
        out.a(i) = da / 2;
        out.b(i) = db / 2;
    }
    return out;
}

BigInt OracleCurve::intersect_round(const RoundCurve& c) const {
    validate_round(c, n_, /*allow_boundary=*/true);
    std::vector<Event> ev = crossing_sequence(n_, points_);
    reduce_events(ev);
    std::vector<Line> lines = reference_lines(n_);
    BigInt left = 0, right = 0;
    for (const Event& e : ev) {
        const Line& l = lines[e.line];
        if (l.kind != Line::Kind::wall) continue;
        if (l.index == c.first - 1) ++left;
        if (l.index == c.last) ++right;
    }
    return left + right;
}

OracleCurve OracleCurve::act_letter(int letter) const {
    int i = letter > 0 ? letter : -letter;
    if (i < 1 || i >= n_)
        throw validity_error("generator index out of range");
    Point center{Rational(2 * i + 1, 2), Rational(0)};
    std::vector<Point> pts = subdivide_near(points_, center);
    for (Point& p : pts) p = apply_half_twist(p, center, letter > 0 ? 1 : -1);
    // re-read and redraw through canonical ports to keep numbers small
    std::vector<Event> ev = crossing_sequence(n_, pts);
    reduce_events(ev);
    return OracleCurve(n_, redraw(n_, ev));
}

OracleCurve OracleCurve::act(const BraidWord& w) const {
    OracleCurve cur = *this;
    for (int letter : w.letters) cur = cur.act_letter(letter);
    return cur;
}

} // namespace bigmcg
