#ifndef STORYBOARD_RENDER_HPP
#define STORYBOARD_RENDER_HPP

#include "storyboard/image.hpp"
#include "storyboard/layout.hpp"
#include "storyboard/resources.hpp"
#include "storyboard/synthesizer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace storyboard {

struct RenderSpec {
    int screen_width_dp = 360;
    int screen_height_dp = 640;
    double density_scale = 2.0;
    int font_size_default_dp = 14;
    /// Advance of one character as a fraction of the font size.
    double char_width_factor = 0.6;

    /// Throws Error unless every dimension is positive.
    void validate() const;

    int width_px() const;
    int height_px() const;
    int dp_to_px(double dp) const;
};

enum class BoxKind {
    container,
    text,        // text-bearing widgets
    image,       // ImageView / ImageButton: gray "IMG" placeholder
    widget,      // other known leaf widgets
    unsupported, // unknown tags: labeled gray box
};

std::string_view to_string(BoxKind kind);

/// One laid-out component. Coordinates are device pixels on the page and
/// already clipped to the parent box.
struct LayoutBox {
    std::string node_id;
    int parent = -1; // index into the box list
    std::string tag;
    BoxKind kind = BoxKind::container;
    int x = 0, y = 0, w = 0, h = 0;

    std::string text;       // already truncated to the box width
    std::string background; // #RRGGBB, empty for none
    std::string text_color; // #RRGGBB
    int font_px = 0;
    int text_x = 0;         // text origin (left, baseline)
    int text_y = 0;

    friend bool operator==(const LayoutBox&, const LayoutBox&) = default;
};

/// Two-pass box layout. Boxes come back in preorder, which is also draw
/// order. `resources` resolves @string, @color and @dimen references; pass
/// nullptr to show references verbatim.
std::vector<LayoutBox> measure_and_layout(const ComponentNode& root,
                                          const RenderSpec& spec,
                                          const ResourceTable* resources = nullptr);
std::vector<LayoutBox> measure_and_layout(const StaticLayoutTree& tree,
                                          const RenderSpec& spec,
                                          const ResourceTable* resources = nullptr);

struct RenderedPage {
    std::string owner;
    std::string svg;
    std::optional<GrayImage> raster;
    int width_px = 0;
    int height_px = 0;
};

/// Deterministic SVG of the boxes; `with_raster` also fills `raster`.
RenderedPage render_svg(const std::vector<LayoutBox>& boxes,
                        const RenderSpec& spec, bool with_raster = false);

/// Grayscale software rendering of the same boxes, used for metrics.
/// Glyphs are drawn as solid cells.
GrayImage rasterize(const std::vector<LayoutBox>& boxes, const RenderSpec& spec);

/// Layout plus SVG for one synthesized page.
RenderedPage render_page(const StaticLayoutTree& tree, const RenderSpec& spec,
                         const ResourceTable* resources = nullptr,
                         bool with_raster = false);

/// Gray value of a #RRGGBB color (ITU-R 601 luma, integer weights).
std::uint8_t luma(std::string_view color);

} // namespace storyboard

#endif
