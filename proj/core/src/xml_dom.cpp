#include "xml_dom.hpp"

#include "storyboard/errors.hpp"

#include <expat.h>

#include <memory>

namespace storyboard::detail {

const std::string* XmlElement::attribute(std::string_view key) const
{
    for (const auto& [k, v] : attributes) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

namespace {

struct ParserDeleter {
    void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

struct BuildState {
    XML_Parser parser = nullptr;
    std::vector<XmlElement*> stack;
    XmlElement root;
    bool has_root = false;
};

void on_start(void* user, const XML_Char* name, const XML_Char** atts)
{
    auto& st = *static_cast<BuildState*>(user);
    XmlElement* target;
    if (st.stack.empty()) {
        st.has_root = true;
        target = &st.root;
    }
    else {
        st.stack.back()->children.emplace_back();
        target = &st.stack.back()->children.back();
    }
    target->name = name;
    target->line = static_cast<long>(XML_GetCurrentLineNumber(st.parser));
    for (int i = 0; atts[i] != nullptr; i += 2) {
        target->attributes.emplace_back(atts[i], atts[i + 1]);
    }
    st.stack.push_back(target);
}

void on_end(void* user, const XML_Char*)
{
    static_cast<BuildState*>(user)->stack.pop_back();
}

void on_text(void* user, const XML_Char* s, int len)
{
    auto& st = *static_cast<BuildState*>(user);
    if (!st.stack.empty()) {
        st.stack.back()->text.append(s, static_cast<std::size_t>(len));
    }
}

} // namespace

XmlElement parse_xml(std::string_view xml, const std::string& file)
{
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(
            XML_ParserCreate("UTF-8"));
    if (!parser) {
        throw Error("cannot allocate XML parser");
    }
    BuildState st;
    st.parser = parser.get();
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);

    if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), 1)
        == XML_STATUS_ERROR) {
        throw ParseError(
                file, static_cast<long>(XML_GetCurrentLineNumber(parser.get())),
                XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    if (!st.has_root) {
        throw ParseError(file, 1, "no root element");
    }
    return std::move(st.root);
}

std::string escape_xml(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c; break;
        }
    }
    return out;
}

} // namespace storyboard::detail
