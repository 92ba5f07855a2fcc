#include "cobweb/report/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cobweb::report {

using experiments::Cell;
using experiments::ExperimentId;
using experiments::Summary;

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
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

std::string num(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

// Plot area with a linear y axis; x positions are slots 0..n-1.
class Canvas {
 public:
  Canvas(std::string title, std::string y_label, double y_min, double y_max,
         std::size_t slots)
      : y_min_(y_min), y_max_(y_max), slots_(std::max<std::size_t>(slots, 1)) {
    width_ = std::max(480.0, 90.0 + 64.0 * static_cast<double>(slots_));
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
         << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(width_)
         << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out_ << "<text x=\"" << num(width_ / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
         << escape_xml(title) << "</text>\n";
    out_ << "<text transform=\"translate(16," << num((kTop + kBottom) / 2)
         << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(y_label) << "</text>\n";
    line(kLeft, kTop, kLeft, kBottom, "#000");
    line(kLeft, kBottom, width_ - kRight, kBottom, "#000");
    for (int t = 0; t <= 4; ++t) {
      const double v = y_min_ + (y_max_ - y_min_) * t / 4.0;
      const double y = y_of(v);
      line(kLeft - 4, y, kLeft, y, "#000");
      line(kLeft, y, width_ - kRight, y, "#e5e5e5");
      out_ << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
           << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
    }
  }

  double x_of(double slot) const {
    const double span = width_ - kLeft - kRight;
    return kLeft + span * (slot + 0.5) / static_cast<double>(slots_);
  }

  double y_of(double v) const {
    const double t = (std::clamp(v, y_min_, y_max_) - y_min_) / (y_max_ - y_min_);
    return kBottom - t * (kBottom - kTop);
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            const std::string& extra = "") {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
         << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\"" << extra << "/>\n";
  }

  void x_label(std::size_t slot, const std::string& text) {
    const double x = x_of(static_cast<double>(slot));
    out_ << "<text transform=\"translate(" << num(x) << ',' << num(kBottom + 12)
         << ") rotate(35)\">" << escape_xml(text) << "</text>\n";
  }

  void bar(std::size_t slot, double value, const std::string& fill) {
    const double x = x_of(static_cast<double>(slot));
    const double w = 0.6 * (width_ - kLeft - kRight) / static_cast<double>(slots_);
    const double top = y_of(value);
    out_ << "<rect x=\"" << num(x - w / 2) << "\" y=\"" << num(top) << "\" width=\""
         << num(w) << "\" height=\"" << num(kBottom - top) << "\" fill=\"" << fill
         << "\" stroke=\"#333\"/>\n";
  }

  void whisker(double slot, double lo, double hi) {
    const double x = x_of(slot);
    line(x, y_of(lo), x, y_of(hi), "#000");
    line(x - 4, y_of(lo), x + 4, y_of(lo), "#000");
    line(x - 4, y_of(hi), x + 4, y_of(hi), "#000");
  }

  void marker(double slot, double value, bool triangle, bool filled) {
    const double x = x_of(slot);
    const double y = y_of(value);
    const std::string fill = filled ? "#000" : "#fff";
    if (triangle) {
      out_ << "<polygon points=\"" << num(x) << ',' << num(y - 5) << ' ' << num(x - 5)
           << ',' << num(y + 4) << ' ' << num(x + 5) << ',' << num(y + 4)
           << "\" fill=\"" << fill << "\" stroke=\"#000\"/>\n";
    } else {
      out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4.5\" fill=\""
           << fill << "\" stroke=\"#000\"/>\n";
    }
  }

  void polyline(const std::vector<std::pair<double, double>>& points,
                const std::string& stroke, bool dashed) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\""
         << (dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
    for (const auto& [slot, v] : points) out_ << num(x_of(slot)) << ',' << num(y_of(v)) << ' ';
    out_ << "\"/>\n";
  }

  void text(double x, double y, const std::string& s) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\">" << escape_xml(s)
         << "</text>\n";
  }

  double right() const { return width_ - kRight; }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  static constexpr double kHeight = 360.0;
  static constexpr double kLeft = 60.0;
  static constexpr double kRight = 20.0;
  static constexpr double kTop = 36.0;
  static constexpr double kBottom = 280.0;

  double y_min_;
  double y_max_;
  std::size_t slots_;
  double width_ = 0.0;
  std::ostringstream out_;
};

std::vector<const Cell*> test_phase(const std::vector<Cell>& cells) {
  std::vector<const Cell*> out;
  for (const auto& c : cells) {
    if (c.segment == 0) out.push_back(&c);
  }
  return out;
}

Figure type_bars(const Summary& s, bool recognition) {
  const auto cells = test_phase(s.types);
  double lo = 0.0;
  double hi = 1.0;
  if (recognition) {
    lo = 0.0;
    hi = -1e300;
    for (const Cell* c : cells) {
      lo = std::min(lo, c->loglik.lower);
      hi = std::max(hi, c->loglik.upper);
    }
    lo = std::floor(lo);
    hi = std::ceil(hi) == lo ? lo + 1 : std::ceil(hi);
  }
  Canvas canvas(recognition ? "Recognition by item type" : "Classification by item type",
                recognition ? "weighted log-likelihood" : "P(reference category)", lo, hi,
                cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& iv = recognition ? cells[i]->loglik : cells[i]->p_reference;
    canvas.bar(i, iv.mean, "#9ecae1");
    canvas.whisker(static_cast<double>(i), iv.lower, iv.upper);
    canvas.x_label(i, cells[i]->key);
  }
  return {recognition ? "recognition.svg" : "classification.svg", canvas.finish()};
}

Figure medin_points(const Summary& s, const experiments::StimulusSet& stimuli) {
  auto cells = test_phase(s.items);
  std::sort(cells.begin(), cells.end(), [](const Cell* a, const Cell* b) {
    return a->p_reference.mean < b->p_reference.mean;
  });
  std::map<std::string, std::string> types;
  for (const auto& t : stimuli.test) types[t.item_id] = t.item_type;
  Canvas canvas("Accuracy by item", "P(correct category)", 0.0, 1.0, cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string& type = types[cells[i]->key];
    canvas.whisker(static_cast<double>(i), cells[i]->p_reference.lower,
                   cells[i]->p_reference.upper);
    canvas.marker(static_cast<double>(i), cells[i]->p_reference.mean,
                  type.rfind("new", 0) == 0, type.back() == 'B');
    canvas.x_label(i, cells[i]->key);
  }
  return {"items.svg", canvas.finish()};
}

Figure smith_minda_lines(const Summary& s, const experiments::StimulusSet& stimuli) {
  int segments = 0;
  for (const auto& c : s.items) segments = std::max(segments, c.segment);
  Canvas canvas("P(A) by training segment", "P(category A)", 0.0, 1.0,
                static_cast<std::size_t>(segments));
  for (int seg = 1; seg <= segments; ++seg) {
    canvas.x_label(static_cast<std::size_t>(seg - 1), std::to_string(seg));
  }
  for (const auto& t : stimuli.test) {
    std::vector<std::pair<double, double>> points;
    for (int seg = 1; seg <= segments; ++seg) {
      const Cell* c = s.item(t.item_id, seg);
      if (!c) continue;
      const double p = c->p_reference.mean;
      points.emplace_back(seg - 1, t.reference == "A" ? p : 1.0 - p);
    }
    const bool exception = t.item_type == "exception";
    canvas.polyline(points, t.reference == "A" ? "#3182bd" : "#e6550d", exception);
    for (const auto& [slot, v] : points) {
      canvas.marker(slot, v, exception, t.reference == "B");
    }
  }
  canvas.text(canvas.right() - 150, 50, "blue: A, orange: B, dashed: exception");
  return {"trajectories.svg", canvas.finish()};
}

}  // namespace

void write_results_csv(std::ostream& out,
                       const std::vector<experiments::ParticipantResult>& results) {
  out << "participant,item_id,item_type,segment,p_reference,loglik\n";
  for (const auto& r : results) {
    for (const auto& o : r.observations) {
      out << r.participant << ',' << csv_field(o.item_id) << ','
          << csv_field(o.item_type) << ',' << o.segment << ','
          << format_double(o.p_reference) << ',' << format_double(o.loglik) << '\n';
    }
  }
}

std::vector<Figure> figures(const Summary& summary,
                            const experiments::StimulusSet& stimuli) {
  switch (summary.protocol.experiment) {
    case ExperimentId::hayes_roth:
      return {type_bars(summary, false), type_bars(summary, true)};
    case ExperimentId::medin_1:
    case ExperimentId::medin_2:
      return {medin_points(summary, stimuli)};
    case ExperimentId::smith_minda:
      return {smith_minda_lines(summary, stimuli)};
  }
  return {};
}

}  // namespace cobweb::report
