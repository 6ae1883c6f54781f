#include "storyboard/render.hpp"

#include "storyboard/errors.hpp"
#include "xml_dom.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace storyboard {

void RenderSpec::validate() const
{
    if (screen_width_dp <= 0 || screen_height_dp <= 0 || density_scale <= 0
        || font_size_default_dp <= 0 || char_width_factor <= 0) {
        throw Error("render spec dimensions must be positive");
    }
}

int RenderSpec::width_px() const { return dp_to_px(screen_width_dp); }
int RenderSpec::height_px() const { return dp_to_px(screen_height_dp); }

int RenderSpec::dp_to_px(double dp) const
{
    return int(std::lround(dp * density_scale));
}

std::string_view to_string(BoxKind kind)
{
    switch (kind) {
    case BoxKind::container: return "container";
    case BoxKind::text: return "text";
    case BoxKind::image: return "image";
    case BoxKind::widget: return "widget";
    case BoxKind::unsupported: return "unsupported";
    }
    return "container";
}

std::uint8_t luma(std::string_view color)
{
    auto c = normalize_color(color);
    if (!c) {
        return 0;
    }
    auto channel = [&](int i) {
        return std::stoi(c->substr(1 + 2 * i, 2), nullptr, 16);
    };
    return std::uint8_t((299 * channel(0) + 587 * channel(1)
                         + 114 * channel(2) + 500) / 1000);
}

namespace {

constexpr std::string_view kBorder = "#9E9E9E";
constexpr std::string_view kImageFill = "#BDBDBD";
constexpr std::string_view kUnsupportedFill = "#E0E0E0";
constexpr std::string_view kHintColor = "#9E9E9E";

enum class Container { none, linear_v, linear_h, frame, relative, grid, fallback };

struct Rect {
    int x = 0, y = 0, w = 0, h = 0;
};

struct Insets {
    int l = 0, t = 0, r = 0, b = 0;
};

struct Size {
    int w = 0, h = 0;
};

bool in(std::string_view tag, std::initializer_list<std::string_view> set)
{
    return std::find(set.begin(), set.end(), tag) != set.end();
}

bool is_text_tag(std::string_view tag)
{
    return in(tag, {"TextView", "Button", "EditText", "CheckBox",
                    "RadioButton", "Switch", "ToggleButton",
                    "CheckedTextView", "AutoCompleteTextView",
                    "MultiAutoCompleteTextView"});
}

bool is_padded_tag(std::string_view tag)
{
    return in(tag, {"Button", "EditText", "Spinner", "CheckBox",
                    "RadioButton", "Switch", "ToggleButton",
                    "AutoCompleteTextView", "MultiAutoCompleteTextView"});
}

bool is_known_container(std::string_view tag)
{
    return in(tag, {"LinearLayout", "RadioGroup", "TableLayout", "TableRow",
                    "FrameLayout", "ScrollView", "HorizontalScrollView",
                    "NestedScrollView", "CardView", "RelativeLayout",
                    "ListView", "RecyclerView", "ViewPager", "GridView"});
}

BoxKind kind_of(const ComponentNode& n)
{
    auto tag = simple_tag(n.tag);
    if (is_text_tag(tag)) {
        return BoxKind::text;
    }
    if (tag == "ImageView" || tag == "ImageButton") {
        return BoxKind::image;
    }
    if (is_leaf_widget(tag)) {
        return BoxKind::widget;
    }
    return is_known_container(tag) ? BoxKind::container : BoxKind::unsupported;
}

Container container_of(const ComponentNode& n)
{
    auto tag = simple_tag(n.tag);
    if (is_leaf_widget(tag)) {
        return Container::none;
    }
    if (tag == "LinearLayout") {
        return n.attributes.get_or("orientation", "horizontal") == "vertical"
                       ? Container::linear_v
                       : Container::linear_h;
    }
    if (tag == "RadioGroup") {
        return n.attributes.get_or("orientation", "vertical") == "horizontal"
                       ? Container::linear_h
                       : Container::linear_v;
    }
    if (tag == "TableRow") {
        return Container::linear_h;
    }
    if (in(tag, {"TableLayout", "ListView", "RecyclerView", "ViewPager"})) {
        return Container::linear_v;
    }
    if (in(tag, {"FrameLayout", "ScrollView", "HorizontalScrollView",
                 "NestedScrollView", "CardView"})) {
        return Container::frame;
    }
    if (tag == "RelativeLayout") {
        return Container::relative;
    }
    if (tag == "GridView") {
        return Container::grid;
    }
    return Container::fallback;
}

std::size_t code_points(std::string_view s)
{
    return std::size_t(std::count_if(s.begin(), s.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

std::string first_code_points(const std::string& s, std::size_t n)
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
            if (seen == n) {
                return s.substr(0, i);
            }
            ++seen;
        }
    }
    return s;
}

class Layouter {
public:
    Layouter(const RenderSpec& spec, const ResourceTable* res)
        : spec_(spec), res_(res),
          char_milli_(int(std::lround(spec.char_width_factor * 1000)))
    {
        spec_.validate();
    }

    std::vector<LayoutBox> run(const ComponentNode& root)
    {
        Rect screen{0, 0, spec_.width_px(), spec_.height_px()};
        auto s = measure(root, screen.w, screen.h, true);
        arrange(root, "0", {0, 0, s.w, s.h}, -1, screen);
        return std::move(boxes_);
    }

private:
    std::string resolve(const std::string& value) const
    {
        if (res_ && ResourceTable::is_reference(value)) {
            if (auto v = res_->find(value)) {
                return *v;
            }
        }
        return value;
    }

    std::optional<int> px(const AttributeSet& attrs, std::string_view name) const
    {
        const auto* raw = attrs.find(name);
        if (!raw) {
            return std::nullopt;
        }
        auto v = resolve(*raw);
        double num = 0;
        auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), num);
        if (ec != std::errc()) {
            return std::nullopt;
        }
        std::string_view unit(end, std::size_t(v.data() + v.size() - end));
        if (unit == "px") {
            return int(std::lround(num));
        }
        if (unit.empty() || unit == "dp" || unit == "dip" || unit == "sp") {
            return spec_.dp_to_px(num);
        }
        return std::nullopt;
    }

    enum class Mode { match, wrap, exact };
    struct SizeSpec {
        Mode mode;
        int px;
    };

    SizeSpec size_attr(const ComponentNode& n, std::string_view name,
                       bool is_root) const
    {
        const auto* v = n.attributes.find(name);
        if (!v) {
            return {is_root ? Mode::match : Mode::wrap, 0};
        }
        if (*v == "match_parent" || *v == "fill_parent") {
            return {Mode::match, 0};
        }
        if (*v == "wrap_content") {
            return {Mode::wrap, 0};
        }
        if (auto p = px(n.attributes, name)) {
            return {Mode::exact, std::max(0, *p)};
        }
        return {Mode::wrap, 0};
    }

    Insets insets(const ComponentNode& n, const std::string& prefix,
                  int fallback) const
    {
        const auto& a = n.attributes;
        bool any = std::any_of(a.begin(), a.end(), [&](const auto& kv) {
            return kv.first.starts_with(prefix);
        });
        if (!any) {
            return {fallback, fallback, fallback, fallback};
        }
        int all = px(a, prefix).value_or(0);
        Insets in{all, all, all, all};
        if (auto h = px(a, prefix + "Horizontal")) {
            in.l = in.r = *h;
        }
        if (auto v = px(a, prefix + "Vertical")) {
            in.t = in.b = *v;
        }
        for (auto side : {"Left", "Start"}) {
            if (auto p = px(a, prefix + side)) {
                in.l = *p;
            }
        }
        for (auto side : {"Right", "End"}) {
            if (auto p = px(a, prefix + side)) {
                in.r = *p;
            }
        }
        if (auto p = px(a, prefix + "Top")) {
            in.t = *p;
        }
        if (auto p = px(a, prefix + "Bottom")) {
            in.b = *p;
        }
        return in;
    }

    Insets padding(const ComponentNode& n) const
    {
        int fallback = is_padded_tag(simple_tag(n.tag)) ? spec_.dp_to_px(8) : 0;
        return insets(n, "padding", fallback);
    }

    Insets margins(const ComponentNode& n) const
    {
        return insets(n, "layout_margin", 0);
    }

    int font_px(const ComponentNode& n) const
    {
        auto f = px(n.attributes, "textSize");
        return f && *f > 0 ? *f : spec_.dp_to_px(spec_.font_size_default_dp);
    }

    static int line_height(int font) { return (font * 5 + 3) / 4; }

    int text_width(std::size_t chars, int font) const
    {
        long long milli = (long long)chars * font * char_milli_;
        return int((milli + 999) / 1000);
    }

    int char_offset(std::size_t i, int font) const
    {
        return int((long long)i * font * char_milli_ / 1000);
    }

    std::string display_text(const ComponentNode& n, bool* is_hint = nullptr) const
    {
        auto tag = simple_tag(n.tag);
        switch (kind_of(n)) {
        case BoxKind::text: {
            if (const auto* t = n.attributes.find("text"); t && !t->empty()) {
                return resolve(*t);
            }
            if (const auto* h = n.attributes.find("hint")) {
                if (is_hint) {
                    *is_hint = true;
                }
                return resolve(*h);
            }
            return {};
        }
        case BoxKind::image: return "IMG";
        case BoxKind::unsupported: return std::string(tag);
        case BoxKind::widget:
            return tag == "Spinner" ? resolve(n.attributes.get_or("prompt", ""))
                                    : std::string();
        case BoxKind::container: return {};
        }
        return {};
    }

    Size intrinsic(const ComponentNode& n) const
    {
        auto tag = simple_tag(n.tag);
        int font = font_px(n);
        switch (kind_of(n)) {
        case BoxKind::text:
        case BoxKind::unsupported:
            return {text_width(code_points(display_text(n)), font),
                    line_height(font)};
        case BoxKind::image: return {spec_.dp_to_px(48), spec_.dp_to_px(48)};
        case BoxKind::widget:
            if (tag == "ProgressBar") {
                return {spec_.dp_to_px(48), spec_.dp_to_px(48)};
            }
            if (tag == "SeekBar" || tag == "RatingBar") {
                return {spec_.dp_to_px(120), spec_.dp_to_px(24)};
            }
            if (tag == "Spinner") {
                return {spec_.dp_to_px(120), line_height(font)};
            }
            return {0, 0};
        case BoxKind::container: return {0, 0};
        }
        return {0, 0};
    }

    // Outer size of `n` (without margins) given at most max_w x max_h.
    Size measure(const ComponentNode& n, int max_w, int max_h,
                 bool is_root = false) const
    {
        max_w = std::max(0, max_w);
        max_h = std::max(0, max_h);
        auto ws = size_attr(n, "layout_width", is_root);
        auto hs = size_attr(n, "layout_height", is_root);
        auto pad = padding(n);
        int avail_w = ws.mode == Mode::exact ? ws.px : max_w;
        int avail_h = hs.mode == Mode::exact ? hs.px : max_h;

        Size content{0, 0};
        bool need_content = ws.mode == Mode::wrap || hs.mode == Mode::wrap;
        if (need_content) {
            int iw = std::max(0, avail_w - pad.l - pad.r);
            int ih = std::max(0, avail_h - pad.t - pad.b);
            if (container_of(n) == Container::none || n.children.empty()) {
                content = intrinsic(n);
            }
            else {
                for (const auto& [child, r] : place_children(n, iw, ih, true)) {
                    auto m = margins(*child);
                    content.w = std::max(content.w, r.x + r.w + m.r);
                    content.h = std::max(content.h, r.y + r.h + m.b);
                }
            }
        }
        auto resolve_axis = [](SizeSpec s, int max, int wrapped) {
            switch (s.mode) {
            case Mode::exact: return s.px;
            case Mode::match: return max;
            case Mode::wrap: return std::min(wrapped, max);
            }
            return max;
        };
        return {resolve_axis(ws, max_w, content.w + pad.l + pad.r),
                resolve_axis(hs, max_h, content.h + pad.t + pad.b)};
    }

    using Placed = std::vector<std::pair<const ComponentNode*, Rect>>;

    static bool has_gravity(const ComponentNode& n, std::string_view g)
    {
        auto v = n.attributes.get_or("layout_gravity", "");
        std::stringstream ss(v);
        std::string part;
        while (std::getline(ss, part, '|')) {
            if (part == g) {
                return true;
            }
        }
        return false;
    }

    static int align_cross(const ComponentNode& c, const Insets& m, int inner,
                           int size, bool horizontal_axis)
    {
        bool center = has_gravity(c, "center")
                      || has_gravity(c, horizontal_axis ? "center_horizontal"
                                                        : "center_vertical");
        bool far = horizontal_axis
                           ? has_gravity(c, "right") || has_gravity(c, "end")
                           : has_gravity(c, "bottom");
        if (center) {
            return m.l * horizontal_axis + m.t * !horizontal_axis
                   + (inner - (horizontal_axis ? m.l + m.r : m.t + m.b) - size) / 2;
        }
        if (far) {
            return inner - (horizontal_axis ? m.r : m.b) - size;
        }
        return horizontal_axis ? m.l : m.t;
    }

    static long weight_milli(const ComponentNode& c)
    {
        const auto* w = c.attributes.find("layout_weight");
        if (!w) {
            return 0;
        }
        double v = 0;
        auto [p, ec] = std::from_chars(w->data(), w->data() + w->size(), v);
        (void)p;
        return ec == std::errc() && v > 0 ? std::lround(v * 1000) : 0;
    }

    Placed place_linear(const ComponentNode& n, int iw, int ih, bool vertical,
                        bool measuring) const
    {
        Placed out;
        int used = 0;
        for (const auto& c : n.children) {
            auto m = margins(c);
            Rect r;
            if (vertical) {
                auto s = measure(c, iw - m.l - m.r, ih - used - m.t - m.b);
                r = {align_cross(c, m, iw, s.w, true), used + m.t, s.w, s.h};
                used = r.y + r.h + m.b;
            }
            else {
                auto s = measure(c, iw - used - m.l - m.r, ih - m.t - m.b);
                r = {used + m.l, align_cross(c, m, ih, s.h, false), s.w, s.h};
                used = r.x + r.w + m.r;
            }
            out.emplace_back(&c, r);
        }
        long total = 0;
        for (const auto& c : n.children) {
            total += weight_milli(c);
        }
        int leftover = (vertical ? ih : iw) - used;
        if (measuring || total == 0 || leftover <= 0) {
            return out;
        }
        int shift = 0, given = 0;
        long seen = 0;
        for (auto& [c, r] : out) {
            auto w = weight_milli(*c);
            (vertical ? r.y : r.x) += shift;
            if (w == 0) {
                continue;
            }
            seen += w;
            int upto = int(leftover * seen / total);
            int extra = upto - given;
            given = upto;
            (vertical ? r.h : r.w) += extra;
            shift += extra;
        }
        return out;
    }

    Placed place_frame(const ComponentNode& n, int iw, int ih) const
    {
        Placed out;
        for (const auto& c : n.children) {
            auto m = margins(c);
            auto s = measure(c, iw - m.l - m.r, ih - m.t - m.b);
            out.emplace_back(&c, Rect{align_cross(c, m, iw, s.w, true),
                                      align_cross(c, m, ih, s.h, false), s.w,
                                      s.h});
        }
        return out;
    }

    Placed place_grid(const ComponentNode& n, int iw, int ih) const
    {
        int cols = 2;
        if (const auto* v = n.attributes.find("numColumns")) {
            int parsed = 0;
            auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
            (void)p;
            if (ec == std::errc() && parsed > 0) {
                cols = parsed;
            }
        }
        int cell_w = iw / cols;
        Placed out;
        int row_top = 0, row_h = 0;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const auto& c = n.children[i];
            int col = int(i % std::size_t(cols));
            if (col == 0 && i > 0) {
                row_top += row_h;
                row_h = 0;
            }
            auto m = margins(c);
            auto s = measure(c, cell_w - m.l - m.r, ih - row_top - m.t - m.b);
            out.emplace_back(&c, Rect{col * cell_w + m.l, row_top + m.t, s.w, s.h});
            row_h = std::max(row_h, s.h + m.t + m.b);
        }
        return out;
    }

    Placed place_relative(const ComponentNode& n, int iw, int ih) const
    {
        const auto& kids = n.children;
        std::map<std::string, std::size_t> by_id;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            if (auto id = kids[i].id()) {
                by_id.emplace(*id, i);
            }
        }
        std::vector<std::optional<Rect>> rects(kids.size());
        std::vector<bool> busy(kids.size(), false);

        std::function<std::optional<Rect>(std::size_t)> place;
        auto anchor = [&](const ComponentNode& c,
                          std::string_view rule) -> std::optional<Rect> {
            const auto* ref = c.attributes.find(rule);
            if (!ref) {
                return std::nullopt;
            }
            std::string_view id = *ref;
            for (std::string_view prefix : {"@+id/", "@id/"}) {
                if (id.starts_with(prefix)) {
                    id.remove_prefix(prefix.size());
                }
            }
            auto it = by_id.find(std::string(id));
            if (it == by_id.end() || busy[it->second]) {
                return std::nullopt;
            }
            return place(it->second);
        };
        auto flag = [](const ComponentNode& c, std::string_view rule) {
            return c.attributes.get_or(rule, "") == "true";
        };
        place = [&](std::size_t i) -> std::optional<Rect> {
            if (rects[i]) {
                return rects[i];
            }
            busy[i] = true;
            const auto& c = kids[i];
            auto m = margins(c);
            auto s = measure(c, iw - m.l - m.r, ih - m.t - m.b);
            Rect r{m.l, m.t, s.w, s.h};

            bool center = flag(c, "layout_centerInParent");
            if (auto a = anchor(c, "layout_toRightOf")) {
                r.x = a->x + a->w + m.l;
            }
            else if (auto a = anchor(c, "layout_toEndOf")) {
                r.x = a->x + a->w + m.l;
            }
            else if (auto a = anchor(c, "layout_toLeftOf")) {
                r.x = a->x - m.r - s.w;
            }
            else if (auto a = anchor(c, "layout_toStartOf")) {
                r.x = a->x - m.r - s.w;
            }
            else if (flag(c, "layout_alignParentRight")
                     || flag(c, "layout_alignParentEnd")) {
                r.x = iw - m.r - s.w;
            }
            else if (center || flag(c, "layout_centerHorizontal")) {
                r.x = (iw - s.w) / 2;
            }

            if (auto a = anchor(c, "layout_below")) {
                r.y = a->y + a->h + m.t;
            }
            else if (auto a = anchor(c, "layout_above")) {
                r.y = a->y - m.b - s.h;
            }
            else if (flag(c, "layout_alignParentBottom")) {
                r.y = ih - m.b - s.h;
            }
            else if (center || flag(c, "layout_centerVertical")) {
                r.y = (ih - s.h) / 2;
            }
            busy[i] = false;
            rects[i] = r;
            return r;
        };
        Placed out;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            out.emplace_back(&kids[i], *place(i));
        }
        return out;
    }

    Placed place_children(const ComponentNode& n, int iw, int ih,
                          bool measuring) const
    {
        switch (container_of(n)) {
        case Container::none: return {};
        case Container::linear_v:
        case Container::fallback: return place_linear(n, iw, ih, true, measuring);
        case Container::linear_h: return place_linear(n, iw, ih, false, measuring);
        case Container::frame: return place_frame(n, iw, ih);
        case Container::relative: return place_relative(n, iw, ih);
        case Container::grid: return place_grid(n, iw, ih);
        }
        return {};
    }

    static Rect clip_to(const Rect& r, const Rect& clip)
    {
        auto clamp = [](int v, int lo, int hi) { return std::clamp(v, lo, hi); };
        int x0 = clamp(r.x, clip.x, clip.x + clip.w);
        int x1 = clamp(r.x + r.w, clip.x, clip.x + clip.w);
        int y0 = clamp(r.y, clip.y, clip.y + clip.h);
        int y1 = clamp(r.y + r.h, clip.y, clip.y + clip.h);
        return {x0, y0, x1 - x0, y1 - y0};
    }

    void arrange(const ComponentNode& n, const std::string& id, Rect r,
                 int parent, Rect clip)
    {
        auto clipped = clip_to(r, clip);
        auto pad = padding(n);
        LayoutBox box;
        box.node_id = id;
        box.parent = parent;
        box.tag = n.tag;
        box.kind = kind_of(n);
        box.x = clipped.x;
        box.y = clipped.y;
        box.w = clipped.w;
        box.h = clipped.h;
        box.font_px = font_px(n);

        bool hint = false;
        auto text = display_text(n, &hint);
        if (!text.empty()) {
            int room = std::max(0, r.w - pad.l - pad.r);
            if (box.kind == BoxKind::image) {
                room = r.w;
            }
            auto fit = std::size_t((long long)room * 1000
                                   / ((long long)box.font_px * char_milli_));
            box.text = first_code_points(text, fit);
            int tw = text_width(code_points(box.text), box.font_px);
            int lh = line_height(box.font_px);
            auto tag = simple_tag(n.tag);
            bool centered = box.kind == BoxKind::image || tag == "Button"
                            || tag == "ToggleButton"
                            || n.attributes.get_or("gravity", "").find("center")
                                       != std::string::npos;
            if (centered) {
                box.text_x = r.x + (r.w - tw) / 2;
                box.text_y = r.y + (r.h - lh) / 2 + box.font_px;
            }
            else {
                box.text_x = r.x + pad.l;
                box.text_y = r.y + pad.t + box.font_px;
            }
        }

        auto color = [&](std::string_view name) -> std::string {
            if (const auto* v = n.attributes.find(name)) {
                if (auto c = normalize_color(resolve(*v))) {
                    return *c;
                }
            }
            return {};
        };
        box.background = color("background");
        if (box.background.empty() && box.kind == BoxKind::image) {
            box.background = kImageFill;
        }
        if (box.background.empty() && box.kind == BoxKind::unsupported) {
            box.background = kUnsupportedFill;
        }
        box.text_color = color("textColor");
        if (box.text_color.empty()) {
            box.text_color = hint ? kHintColor : "#000000";
        }

        boxes_.push_back(std::move(box));
        int self = int(boxes_.size()) - 1;
        Rect inner{r.x + pad.l, r.y + pad.t, std::max(0, r.w - pad.l - pad.r),
                   std::max(0, r.h - pad.t - pad.b)};
        auto placed = place_children(n, inner.w, inner.h, false);
        for (std::size_t i = 0; i < placed.size(); ++i) {
            const auto& [child, cr] = placed[i];
            arrange(*child, child_node_id(id, i),
                    {inner.x + cr.x, inner.y + cr.y, cr.w, cr.h}, self, clipped);
        }
    }

    RenderSpec spec_;
    const ResourceTable* res_;
    int char_milli_;
    std::vector<LayoutBox> boxes_;
};

} // namespace

std::vector<LayoutBox> measure_and_layout(const ComponentNode& root,
                                          const RenderSpec& spec,
                                          const ResourceTable* resources)
{
    return Layouter(spec, resources).run(root);
}

std::vector<LayoutBox> measure_and_layout(const StaticLayoutTree& tree,
                                          const RenderSpec& spec,
                                          const ResourceTable* resources)
{
    return measure_and_layout(tree.root, spec, resources);
}

GrayImage rasterize(const std::vector<LayoutBox>& boxes, const RenderSpec& spec)
{
    spec.validate();
    GrayImage img(spec.width_px(), spec.height_px(), 255);
    auto char_milli = std::lround(spec.char_width_factor * 1000);
    auto border = luma(kBorder);
    for (const auto& b : boxes) {
        if (b.w <= 0 || b.h <= 0) {
            continue;
        }
        if (!b.background.empty()) {
            img.fill_rect(b.x, b.y, b.w, b.h, luma(b.background));
        }
        img.fill_rect(b.x, b.y, b.w, 1, border);
        img.fill_rect(b.x, b.y + b.h - 1, b.w, 1, border);
        img.fill_rect(b.x, b.y, 1, b.h, border);
        img.fill_rect(b.x + b.w - 1, b.y, 1, b.h, border);

        auto ink = luma(b.text_color);
        int glyph_h = b.font_px * 7 / 10;
        std::size_t i = 0;
        for (std::size_t k = 0; k < b.text.size(); ++k) {
            auto ch = static_cast<unsigned char>(b.text[k]);
            if ((ch & 0xC0) == 0x80) {
                continue;
            }
            int x0 = b.text_x + int(long(i) * b.font_px * char_milli / 1000);
            int x1 = b.text_x + int(long(i + 1) * b.font_px * char_milli / 1000);
            ++i;
            if (ch == ' ') {
                continue;
            }
            // Clip the glyph cell to the box.
            Rect cell{x0 + 1, b.text_y - glyph_h, std::max(0, x1 - x0 - 2), glyph_h};
            int cx0 = std::max(cell.x, b.x), cy0 = std::max(cell.y, b.y);
            int cx1 = std::min(cell.x + cell.w, b.x + b.w);
            int cy1 = std::min(cell.y + cell.h, b.y + b.h);
            if (cx1 > cx0 && cy1 > cy0) {
                img.fill_rect(cx0, cy0, cx1 - cx0, cy1 - cy0, ink);
            }
        }
    }
    return img;
}

RenderedPage render_svg(const std::vector<LayoutBox>& boxes,
                        const RenderSpec& spec, bool with_raster)
{
    spec.validate();
    RenderedPage page;
    page.width_px = spec.width_px();
    page.height_px = spec.height_px();
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << page.width_px
        << "\" height=\"" << page.height_px << "\" viewBox=\"0 0 "
        << page.width_px << ' ' << page.height_px << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << page.width_px << "\" height=\""
        << page.height_px << "\" fill=\"#FFFFFF\"/>\n";
    for (const auto& b : boxes) {
        if (b.w <= 0 || b.h <= 0) {
            continue;
        }
        svg << "<rect data-node=\"" << b.node_id << "\" data-tag=\""
            << detail::escape_xml(std::string(simple_tag(b.tag))) << "\" x=\""
            << b.x << "\" y=\"" << b.y << "\" width=\"" << b.w << "\" height=\""
            << b.h << "\" fill=\""
            << (b.background.empty() ? std::string("none") : b.background)
            << "\" stroke=\"" << kBorder << "\" stroke-width=\"1\"/>\n";
        if (!b.text.empty()) {
            svg << "<text x=\"" << b.text_x << "\" y=\"" << b.text_y
                << "\" font-family=\"monospace\" font-size=\"" << b.font_px
                << "\" fill=\"" << b.text_color << "\">"
                << detail::escape_xml(b.text) << "</text>\n";
        }
    }
    svg << "</svg>\n";
    page.svg = svg.str();
    if (with_raster) {
        page.raster = rasterize(boxes, spec);
    }
    return page;
}

RenderedPage render_page(const StaticLayoutTree& tree, const RenderSpec& spec,
                         const ResourceTable* resources, bool with_raster)
{
    auto page = render_svg(measure_and_layout(tree, spec, resources), spec,
                           with_raster);
    page.owner = tree.owner;
    return page;
}

} // namespace storyboard
