#!/usr/bin/env python3
"""Writes the fixture bundles and corpora under tests/fixtures.

Ground-truth pair lists (expected/*.pairs) are maintained by hand and are
not produced here. Run from any directory; output is deterministic.
"""

import json
import os
import shutil
from functools import lru_cache

HERE = os.path.dirname(os.path.abspath(__file__))
BUNDLES = os.path.join(HERE, "bundles")
CORPUS = os.path.join(HERE, "corpus")

ACTIVITY_BASE = "androidx.appcompat.app.AppCompatActivity"
FRAGMENT_BASE = "androidx.fragment.app.Fragment"


# --- layout XML ------------------------------------------------------------

def el(tag, attrs=None, *children):
    return (tag, dict(attrs or {}), list(children))


def xml(node, indent=0, root=True):
    tag, attrs, children = node
    pad = "    " * indent
    parts = [f"{pad}<{tag}"]
    if root:
        parts[0] += ' xmlns:android="http://schemas.android.com/apk/res/android"'
    for k, v in attrs.items():
        parts.append(f'{pad}    android:{k}="{v}"')
    head = "\n".join(parts)
    if not children:
        return head + " />\n"
    body = "".join(xml(c, indent + 1, False) for c in children)
    return f"{head}>\n{body}{pad}</{tag}>\n"


def wrap(**extra):
    a = {"layout_width": "wrap_content", "layout_height": "wrap_content"}
    a.update(extra)
    return a


def fill(**extra):
    a = {"layout_width": "match_parent", "layout_height": "match_parent"}
    a.update(extra)
    return a


def simple_page(title):
    return el("LinearLayout", fill(orientation="vertical"),
              el("TextView", wrap(text=title)),
              el("Button", wrap(text="Next")))


def snake(name):
    out = ""
    for i, c in enumerate(name):
        if c.isupper() and i:
            out += "_"
        out += c.lower()
    return out


# --- code model statements -------------------------------------------------

def start(target, api=None):
    s = {"op": "start_activity", "target": target}
    if api:
        s["api"] = api
    return s


def start_intent(var, target, api=None):
    s = {"op": "start_activity", "intent": var}
    if api:
        s["api"] = api
    return [{"op": "new_intent", "var": var, "target": target}, s]


def call(cls, method):
    return {"op": "call", "class": cls, "method": method}


def commit(fragment, via="replace"):
    return {"op": "fragment_commit", "fragment": fragment, "via": via}


def adapter(view_type, **source):
    return {"op": "set_adapter", "view": "list", "view_type": view_type,
            "source": source}


def flat(stmts):
    out = []
    for s in stmts:
        if isinstance(s, list):
            out.extend(s)
        else:
            out.append(s)
    return out


def method(name, *stmts):
    return {"name": name, "statements": flat(stmts)}


class Bundle:
    def __init__(self, dirname, package):
        self.dirname = dirname
        self.package = package
        self.activities = []
        self.classes = []
        self.layouts = {}
        self.values = {}

    def activity(self, name, *methods, layout=None, page=None, **extra):
        self.activities.append(name)
        layout = layout if layout is not None else "activity_" + snake(name.replace("Activity", ""))
        cls = {"name": name, "superclass": ACTIVITY_BASE}
        if layout:
            cls["layout"] = layout
            if layout not in self.layouts:
                self.layouts[layout] = page or simple_page(name)
        cls.update(extra)
        cls["methods"] = list(methods)
        self.classes.append(cls)

    def fragment(self, name, *methods, layout=None, page=None):
        layout = layout or "fragment_" + snake(name.replace("Fragment", ""))
        self.layouts.setdefault(layout, page or simple_page(name))
        self.classes.append({"name": name, "superclass": FRAGMENT_BASE,
                             "layout": layout, "methods": list(methods)})

    def inner(self, name, outer, *methods):
        self.classes.append({"name": name, "outer": outer,
                             "methods": list(methods)})

    def plain(self, name, *methods, **extra):
        cls = {"name": name}
        cls.update(extra)
        cls["methods"] = list(methods)
        self.classes.append(cls)

    def layout(self, name, node):
        self.layouts[name] = node

    def write(self, main=None):
        root = os.path.join(BUNDLES, self.dirname)
        shutil.rmtree(root, ignore_errors=True)
        os.makedirs(os.path.join(root, "res", "layout"))
        main = main or self.activities[0]
        lines = ['<?xml version="1.0" encoding="utf-8"?>',
                 '<manifest xmlns:android="http://schemas.android.com/apk/res/android"',
                 f'    package="{self.package}">',
                 "    <application>"]
        for a in self.activities:
            if a == main:
                lines += [f'        <activity android:name=".{a}">',
                          "            <intent-filter>",
                          '                <action android:name="android.intent.action.MAIN" />',
                          "            </intent-filter>",
                          "        </activity>"]
            else:
                lines.append(f'        <activity android:name=".{a}" />')
        lines += ["    </application>", "</manifest>", ""]
        with open(os.path.join(root, "manifest.xml"), "w") as f:
            f.write("\n".join(lines))
        with open(os.path.join(root, "code.model.json"), "w") as f:
            json.dump({"classes": self.classes}, f, indent=2)
            f.write("\n")
        for name, node in sorted(self.layouts.items()):
            with open(os.path.join(root, "res", "layout", name + ".xml"), "w") as f:
                f.write('<?xml version="1.0" encoding="utf-8"?>\n' + xml(node))
        if self.values:
            os.makedirs(os.path.join(root, "res", "values"))
            for kind, entries in self.values.items():
                lines = ['<?xml version="1.0" encoding="utf-8"?>', "<resources>"]
                for k, v in entries.items():
                    lines.append(f'    <{kind} name="{k}">{v}</{kind}>')
                lines += ["</resources>", ""]
                with open(os.path.join(root, "res", "values", kind + "s.xml"), "w") as f:
                    f.write("\n".join(lines))


# --- transition fixtures ---------------------------------------------------

def activity_only_1():
    b = Bundle("activity_only_1", "org.fixture.notes")
    b.activity("MainActivity",
               method("onCreate", start("LoginActivity"), start("RegisterActivity"),
                      call("MainActivity", "showAbout")),
               method("showAbout", start_intent("i", "AboutActivity")))
    b.activity("LoginActivity",
               method("onCreate", start("HomeActivity", "startActivityForResult")),
               method("onRegisterClicked", start("RegisterActivity")))
    b.activity("RegisterActivity", method("onSubmit", start_intent("next", "HomeActivity")))
    b.activity("HomeActivity",
               method("onCreate", call("HomeActivity", "wire")),
               method("wire", start("ProfileActivity"), start("SettingsActivity")),
               method("openDetail", start("DetailActivity", "startActivityIfNeeded")))
    b.activity("ProfileActivity", method("onOptions", start("SettingsActivity")))
    b.activity("SettingsActivity",
               method("onCreate", start("AboutActivity"), start_intent("h", "HelpActivity")))
    b.activity("AboutActivity", method("onCreate"))
    b.activity("HelpActivity", method("onBack", start("MainActivity")))
    b.activity("DetailActivity", method("onUp", start("HomeActivity")))
    b.write()


def activity_only_2():
    b = Bundle("activity_only_2", "org.fixture.reader")
    b.activity("SplashActivity", method("onCreate", start_intent("i", "MainActivity")))
    b.activity("MainActivity",
               method("onCreate", start("ListActivity"), start("SearchActivity")),
               method("onMenu", start("SettingsActivity", "startActivityForResult")))
    b.activity("ListActivity",
               method("onItem", start("DetailActivity")),
               method("onSearch", start("SearchActivity")))
    b.activity("DetailActivity",
               method("onEdit", start_intent("e", "EditActivity")),
               method("onShare", start("ShareActivity")))
    b.activity("EditActivity", method("onSave", start("DetailActivity")))
    b.activity("SearchActivity",
               method("onResult", start("DetailActivity"), start("ListActivity")))
    b.activity("ShareActivity", method("onDone", start("MainActivity")))
    b.activity("SettingsActivity",
               # the intent is overwritten before the start: only MainActivity is reached
               method("onBack", [{"op": "new_intent", "var": "i", "target": "SplashActivity"},
                                 {"op": "new_intent", "var": "i", "target": "MainActivity"},
                                 {"op": "start_activity", "intent": "i"}]))
    b.write()


def inner_only_1():
    b = Bundle("inner_only_1", "org.fixture.camera")
    for a in ["MainActivity", "CameraActivity", "GalleryActivity", "EditorActivity",
              "PreviewActivity", "ExportActivity", "SettingsActivity", "AboutActivity"]:
        b.activity(a, method("onCreate"))
    b.inner("MainActivity$1", "MainActivity",
            method("onClick", start("CameraActivity"), start("GalleryActivity")))
    b.inner("MainActivity$2", "MainActivity",
            method("onMenuItemClick", start_intent("s", "SettingsActivity")))
    b.inner("CameraActivity$ShutterCallback", "CameraActivity",
            method("onPictureTaken", start("PreviewActivity", "startActivityForResult")))
    b.inner("GalleryActivity$1", "GalleryActivity",
            method("onItemClick", start("EditorActivity"), start("PreviewActivity")))
    b.inner("EditorActivity$1", "EditorActivity", method("run", start("ExportActivity")))
    b.inner("EditorActivity$1$1", "EditorActivity$1",
            method("onClick", start("PreviewActivity")))
    b.inner("PreviewActivity$1", "PreviewActivity", method("onClick", start("EditorActivity")))
    b.inner("ExportActivity$ExportTask", "ExportActivity",
            method("onPostExecute", start("MainActivity")))
    b.inner("SettingsActivity$1", "SettingsActivity", method("onClick", start("AboutActivity")))
    b.inner("AboutActivity$1", "AboutActivity", method("onClick", start("MainActivity")))
    b.write()


def inner_only_2():
    b = Bundle("inner_only_2", "org.fixture.mail")
    for a in ["LauncherActivity", "InboxActivity", "ComposeActivity", "ThreadActivity",
              "ContactsActivity", "SearchActivity", "PrefsActivity"]:
        b.activity(a, method("onCreate"))
    b.inner("LauncherActivity$1", "LauncherActivity", method("run", start("InboxActivity")))
    b.inner("InboxActivity$1", "InboxActivity",
            method("onClick", start("ComposeActivity")),
            method("onLongClick", start("ThreadActivity")))
    b.inner("InboxActivity$SearchListener", "InboxActivity",
            method("onQuery", start_intent("q", "SearchActivity")))
    b.inner("InboxActivity$2", "InboxActivity",
            method("onMenuItemClick", start("PrefsActivity")))
    b.inner("ComposeActivity$1", "ComposeActivity",
            method("onClick", start("ContactsActivity", "startActivityForResult")))
    b.inner("ThreadActivity$ReplyHandler", "ThreadActivity",
            method("onReply", start("ComposeActivity")))
    # A helper in the same inner class reached through a call.
    b.inner("ContactsActivity$1", "ContactsActivity",
            method("onItemClick", call("ContactsActivity$1", "open")),
            method("open", start("ThreadActivity")))
    b.inner("SearchActivity$1", "SearchActivity", method("onItemClick", start("ThreadActivity")))
    b.inner("PrefsActivity$1", "PrefsActivity", method("onClick", start("LauncherActivity")))
    b.write()


def fragment_only_1():
    b = Bundle("fragment_only_1", "org.fixture.social")
    b.activity("MainActivity",
               method("onCreate", commit("HomeFragment"), call("MainActivity", "showFeed")),
               method("showFeed", commit("FeedFragment", "add")))
    b.activity("SearchActivity", method("onCreate"))
    b.activity("DetailActivity", method("onCreate", commit("DetailFragment")))
    b.activity("SettingsActivity", method("onCreate", commit("PrefFragment")))
    b.activity("ComposeActivity", method("onCreate", commit("ComposeFragment")))
    b.activity("CommentsActivity", method("onCreate", commit("CommentsFragment")))
    b.activity("ShareActivity", method("onCreate", commit("ShareFragment", "add")))
    b.activity("AboutActivity", method("onCreate"))
    b.fragment("HomeFragment",
               method("onViewCreated", start("SearchActivity"), start("DetailActivity")),
               method("onOptionsItemSelected", start("SettingsActivity")))
    b.fragment("FeedFragment",
               method("onItemClick", start_intent("d", "DetailActivity")),
               method("onFab", start("ComposeActivity")))
    b.fragment("DetailFragment",
               method("onComments", start("CommentsActivity")),
               method("onShare", start("ShareActivity")))
    b.fragment("PrefFragment",
               method("onAbout", start("AboutActivity")),
               method("onLogout", start("MainActivity")))
    b.fragment("ComposeFragment", method("onSent", start("MainActivity")))
    b.fragment("CommentsFragment", method("onBack", start("DetailActivity")))
    b.fragment("ShareFragment", method("onDone", start("AboutActivity")))
    b.write()


def fragment_only_2():
    b = Bundle("fragment_only_2", "org.fixture.music")
    b.activity("TabsActivity",
               method("onCreate", adapter("ViewPager", fragment="TabAFragment"),
                      adapter("ViewPager", fragment="TabBFragment")))
    b.activity("PlayerActivity", method("onCreate", commit("ControlsFragment")))
    b.activity("PlaylistActivity", method("onCreate"))
    b.activity("ArtistActivity", method("onCreate", commit("ArtistFragment")))
    b.activity("AlbumActivity", method("onCreate", commit("AlbumFragment")))
    b.activity("QueueActivity", method("onCreate"))
    b.activity("SettingsActivity", method("onCreate"))
    b.fragment("TabAFragment",
               method("onPlay", start("PlayerActivity")),
               method("onPlaylist", call("TabAFragment", "openPlaylist")),
               method("openPlaylist", start("PlaylistActivity")))
    b.inner("TabAFragment$1", "TabAFragment", method("onClick", start("ArtistActivity")))
    b.fragment("TabBFragment",
               method("onAlbum", start_intent("a", "AlbumActivity")),
               method("onSettings", start("SettingsActivity")),
               method("onArtist", start("ArtistActivity")))
    b.fragment("ControlsFragment",
               method("onQueue", start("QueueActivity")),
               method("onList", start("PlaylistActivity")))
    b.fragment("ArtistFragment",
               method("onAlbum", start("AlbumActivity")),
               method("onPlay", start("PlayerActivity")))
    b.fragment("AlbumFragment", method("onPlay", start("PlayerActivity")))
    b.write()


def activity_inner_1():
    b = Bundle("activity_inner_1", "org.fixture.bank")
    b.activity("MainActivity",
               method("onCreate", start("LoginActivity")),
               method("onResume", start("AccountsActivity")))
    b.inner("MainActivity$1", "MainActivity", method("onClick", start("AboutActivity")))
    b.activity("LoginActivity", method("onCreate"))
    b.inner("LoginActivity$LoginTask", "LoginActivity",
            method("onPostExecute", start("AccountsActivity")))
    b.activity("AccountsActivity", method("onItem", start("TransactionsActivity")))
    b.inner("AccountsActivity$1", "AccountsActivity",
            method("onMenuItemClick", start("TransferActivity")))
    b.activity("TransactionsActivity", method("onCreate"))
    b.inner("TransactionsActivity$1", "TransactionsActivity",
            method("onItemClick", start_intent("d", "TransactionDetailActivity")))
    b.activity("TransactionDetailActivity", method("onUp", start("TransactionsActivity")))
    b.activity("TransferActivity", method("onConfirm", start("ConfirmActivity")))
    b.inner("TransferActivity$1", "TransferActivity",
            method("onClick", start("ConfirmActivity")))
    b.activity("ConfirmActivity", method("onDone", start("AccountsActivity")))
    b.activity("SettingsActivity", method("onCreate"))
    b.inner("SettingsActivity$1", "SettingsActivity", method("onClick", start("AboutActivity")))
    b.activity("AboutActivity", method("onCreate"))
    b.inner("AboutActivity$1", "AboutActivity",
            method("onClick", start("SettingsActivity", "startActivityForResult")))
    # The only way into SettingsActivity from the main screen: an inner class
    b.inner("MainActivity$2", "MainActivity", method("onClick", start("SettingsActivity")))
    b.write()


def activity_inner_2():
    b = Bundle("activity_inner_2", "org.fixture.parts")
    b.activity("MainActivity",
               method("onCreate", start("SearchPanel"), start("FavoritesActivity")))
    b.activity("SearchPanel", method("onCreate"))
    b.inner("SearchPanel$SearchByPartName", "SearchPanel",
            method("onPostExecute", start("PartList")))
    b.inner("SearchPanel$SearchByCategory", "SearchPanel",
            method("onPostExecute", start("CategoryList")))
    b.activity("PartList", method("onItem", start("PartDetail")))
    b.activity("CategoryList", method("onCreate"))
    b.inner("CategoryList$1", "CategoryList", method("onItemClick", start("PartList")))
    b.activity("PartDetail", method("onDatasheet", start("DatasheetViewer")))
    b.inner("PartDetail$1", "PartDetail", method("onClick", start("FavoritesActivity")))
    b.activity("DatasheetViewer", method("onCreate"))
    b.activity("FavoritesActivity", method("onItem", start("PartDetail")))
    b.inner("FavoritesActivity$1", "FavoritesActivity",
            method("onClick", start("SearchPanel")))
    b.activity("HistoryActivity", method("onItem", start("PartDetail")))
    b.inner("MainActivity$1", "MainActivity", method("onClick", start("HistoryActivity")))
    b.write()


def activity_fragment_1():
    b = Bundle("activity_fragment_1", "org.fixture.maps")
    b.activity("Main",
               method("onCreate", start("PrefEditor")),
               method("onSearch", start("SearchActivity")),
               method("onLayers", start("LayerActivity")),
               method("onTasks", start("TaskActivity")))
    b.activity("PrefEditor", method("onCreate", commit("PrefEditorFragment")))
    b.activity("AdvancedPrefEditor", method("onCreate"))
    b.activity("SearchActivity", method("onResult", start("Main")))
    # HelpViewer is reached both directly and through LayerFragment.
    b.activity("LayerActivity", method("onCreate", commit("LayerFragment")),
               method("onHelp", start("HelpViewer")))
    b.activity("ImportActivity", method("onDone", start("LayerActivity")))
    b.activity("HelpViewer", method("onCreate"))
    b.activity("LicenseActivity", method("onCreate"))
    b.activity("UploadActivity", method("onCreate", commit("UploadFragment", "add")))
    b.activity("TaskActivity",
               method("onCreate", start("UploadActivity"), start("LayerActivity")))
    b.fragment("PrefEditorFragment",
               method("onAdvanced", start("AdvancedPrefEditor")),
               method("onLicense", start("LicenseActivity")))
    b.fragment("LayerFragment",
               method("onImport", start("ImportActivity")),
               method("onHelp", start("HelpViewer")))
    b.fragment("UploadFragment", method("onDone", start_intent("m", "Main")))
    b.write()


def activity_fragment_2():
    b = Bundle("activity_fragment_2", "org.fixture.shop")
    b.activity("HomeActivity",
               method("onCreate", adapter("ViewPager", fragment="DealsFragment"),
                      commit("CategoriesFragment")),
               method("onCart", start("CartActivity")))
    b.activity("CartActivity", method("onCheckout", start("CheckoutActivity")))
    b.activity("CheckoutActivity", method("onCreate", commit("PaymentFragment")))
    b.activity("OrderActivity", method("onHome", start("HomeActivity")))
    b.activity("ProductActivity", method("onCreate", commit("ReviewsFragment")),
               method("onBuy", start("CartActivity")))
    b.activity("ReviewActivity", method("onCreate"))
    b.activity("AccountActivity", method("onOrders", start("OrderActivity")))
    b.activity("LoginActivity", method("onDone", start("AccountActivity")))
    b.fragment("DealsFragment", method("onItem", start("ProductActivity")))
    b.fragment("CategoriesFragment",
               method("onItem", start("ProductActivity")),
               method("onAccount", start("AccountActivity")))
    b.fragment("PaymentFragment",
               method("onPaid", start("OrderActivity")),
               method("onLogin", start("LoginActivity")))
    b.fragment("ReviewsFragment", method("onWrite", start_intent("r", "ReviewActivity")))
    b.write()


# --- login triple ----------------------------------------------------------

LOGIN_ROOT = fill(orientation="vertical")


def login_static():
    return el("LinearLayout", LOGIN_ROOT,
              el("TextView", wrap(text="Username")),
              el("EditText", fill(layout_height="wrap_content", hint="Enter username")),
              el("TextView", wrap(text="Password")),
              el("EditText", fill(layout_height="wrap_content", hint="Enter password",
                                  inputType="textPassword")),
              el("Button", wrap(text="Login", textColor="#FFFFFF",
                                background="#3F51B5")))


def set_attrs(var, attrs):
    out = []
    for k, v in attrs.items():
        out.append({"op": "set_attr", "var": var, "attr": k, "value": v})
    return out


def login_triple():
    b = Bundle("login_triple", "org.fixture.login")
    b.values = {"string": {"password": "Password", "login": "Login"},
                "color": {"primary": "#3F51B5"}}
    b.activity("LoginStatic", method("onCreate"), layout="login_static",
               page=login_static())

    # Every component built in code; the synthetic parent layout matches
    # the static root.
    stmts = []
    stmts += [{"op": "new_component", "var": "user_label", "tag": "TextView"}]
    stmts += set_attrs("user_label", {"layout_width": "wrap_content",
                                      "layout_height": "wrap_content",
                                      "android:text": "Username"})
    stmts += [{"op": "new_component", "var": "user", "tag": "EditText"}]
    stmts += set_attrs("user", {"layout_width": "match_parent",
                                "layout_height": "wrap_content",
                                "hint": {"call": {"class": "LoginDynamic", "method": "userHint"}}})
    stmts += [{"op": "add_view", "parent": "root", "child": "user_label"},
              {"op": "add_view", "parent": "root", "child": "user"}]
    stmts += [{"op": "new_component", "var": "pass_label", "tag": "TextView"}]
    stmts += set_attrs("pass_label", {"layout_width": "wrap_content",
                                      "layout_height": "wrap_content",
                                      "text": {"resource": "@string/password"}})
    stmts += [{"op": "add_view", "parent": "root", "child": "pass_label"}]
    stmts += [{"op": "new_component", "var": "pass", "tag": "EditText"}]
    stmts += set_attrs("pass", {"layout_width": "match_parent",
                                "layout_height": "wrap_content",
                                "hint": "Enter password",
                                "inputType": "textPassword"})
    stmts += [{"op": "add_view", "parent": "root", "child": "pass"}]
    stmts += [{"op": "new_component", "var": "go", "tag": "Button"}]
    stmts += set_attrs("go", {"layout_width": "wrap_content",
                              "layout_height": "wrap_content",
                              "text": {"call": {"class": "LoginDynamic", "method": "label"}},
                              "textColor": "#FFFFFF",
                              "background": {"resource": "@color/primary"}})
    stmts += [{"op": "add_view", "parent": "root", "child": "go"}]
    b.activity("LoginDynamic", method("onCreate", *stmts),
               method("userHint", {"op": "return_value", "value": "Enter username"}),
               method("label", {"op": "return_value",
                                "value": {"call": {"class": "Strings", "method": "login"}}}),
               layout="")
    b.plain("Strings", method("login", {"op": "return_value",
                                        "value": {"resource": "@string/login"}}))

    # Hybrid: the XML holds the first two rows, the password block is
    # inflated into the root and the button is added in code.
    b.layout("login_hybrid", el("LinearLayout", LOGIN_ROOT,
                                el("TextView", wrap(text="Username")),
                                el("EditText", fill(layout_height="wrap_content",
                                                    hint="Enter username"))))
    b.layout("login_password_block", el("LinearLayout", fill(orientation="vertical"),
                                        el("TextView", wrap(text="Password")),
                                        el("EditText", fill(layout_height="wrap_content",
                                                            hint="Enter password",
                                                            inputType="textPassword"))))
    hyb = [{"op": "inflate", "layout": "login_password_block", "var": "block", "into": "root"},
           {"op": "new_component", "var": "go", "tag": "Button"}]
    hyb += set_attrs("go", {"layout_width": "wrap_content",
                            "layout_height": "wrap_content",
                            "text": {"resource": "@string/login"},
                            "textColor": "#FFFFFF",
                            "background": "#3F51B5"})
    hyb += [{"op": "add_view", "parent": "root", "child": "go"}]
    b.activity("LoginHybrid", method("onCreate", *hyb), layout="login_hybrid")
    b.write()


# --- demo bundle -----------------------------------------------------------

def demo():
    b = Bundle("demo", "org.fixture.news")
    b.values = {"string": {"app_name": "Daily News", "search_hint": "Search articles",
                           "settings": "Settings"},
                "color": {"accent": "#FF4081"}}
    b.activity("MainActivity",
               method("onCreate", commit("NewsListFragment"), call("MainActivity", "initViews"),
                      call("NavUtils", "openSettings")),
               method("initViews", call("MainActivity", "bindData")),
               method("bindData"),
               layout="activity_main",
               page=el("LinearLayout", fill(orientation="vertical"),
                       el("TextView", wrap(text="@string/app_name", textSize="20sp")),
                       el("FrameLayout", fill(id="@+id/content"))))
    b.inner("MainActivity$1", "MainActivity",
            method("onClick", start("SearchActivity")))
    b.fragment("NewsListFragment",
               method("onCreateView", adapter("RecyclerView", layout="item_news")),
               method("onItemClick", start_intent("open", "ArticleActivity")),
               layout="fragment_news_list",
               page=el("LinearLayout", fill(orientation="vertical"),
                       el("RecyclerView", fill(id="@+id/list"))))
    b.layout("item_news", el("LinearLayout", wrap(layout_width="match_parent",
                                                  orientation="horizontal"),
                             el("ImageView", wrap(layout_width="48dp", layout_height="48dp")),
                             el("TextView", wrap(text="Headline"))))
    b.activity("ArticleActivity",
               method("onCreate", commit("CommentsFragment")),
               method("onShare", start("ShareActivity")),
               layout="activity_article",
               page=el("RelativeLayout", fill(),
                       el("TextView", wrap(id="@+id/title", text="Article title",
                                           layout_alignParentTop="true")),
                       el("ImageView", wrap(id="@+id/hero", layout_width="match_parent",
                                            layout_height="120dp",
                                            layout_below="@id/title")),
                       el("FrameLayout", wrap(id="@+id/comments", layout_width="match_parent",
                                              layout_below="@id/hero")),
                       el("Button", wrap(text="Share", layout_alignParentBottom="true"))))
    b.fragment("CommentsFragment",
               method("onMore", start("CommentsActivity")),
               layout="fragment_comments")
    b.activity("CommentsActivity", method("onCreate"))
    b.activity("SearchActivity",
               method("onResult", start("ArticleActivity")),
               layout="activity_search",
               page=el("LinearLayout", fill(orientation="vertical"),
                       el("EditText", fill(layout_height="wrap_content",
                                           hint="@string/search_hint")),
                       el("ListView", fill(id="@+id/results"))))
    b.activity("SettingsActivity",
               method("onCreate",
                      {"op": "new_component", "var": "sw", "tag": "Switch"},
                      *set_attrs("sw", {"layout_width": "match_parent",
                                        "layout_height": "wrap_content",
                                        "text": "Night mode"}),
                      {"op": "add_view", "parent": "@id/prefs", "child": "sw"}),
               method("onAbout", start("a")),
               method("onLogin", start("LoginActivity")),
               layout="activity_settings",
               page=el("LinearLayout", fill(orientation="vertical"),
                       el("TextView", wrap(text="@string/settings")),
                       el("LinearLayout", fill(id="@+id/prefs", orientation="vertical",
                                               layout_height="wrap_content"),
                          el("CheckBox", wrap(text="Notifications")))))
    # Obfuscated about page.
    b.activity("a", method("onCreate", start("HelpActivity")), layout="about",
               page=about_page())
    b.activity("HelpActivity", method("onCreate"))
    b.activity("LoginActivity",
               method("onLoggedIn", start("ProfileActivity")),
               layout="login", page=login_static())
    # Built in code, no layout file.
    prof = [{"op": "new_component", "var": "name", "tag": "TextView"}]
    prof += set_attrs("name", {"text": "Jane Doe", "textSize": "18sp"})
    prof += [{"op": "new_component", "var": "avatar", "tag": "ImageView"},
             *set_attrs("avatar", {"layout_width": "96dp", "layout_height": "96dp"}),
             {"op": "new_component", "var": "row", "tag": "LinearLayout"},
             *set_attrs("row", {"orientation": "horizontal",
                                "layout_width": "match_parent",
                                "layout_height": "wrap_content"}),
             {"op": "add_view", "parent": "row", "child": "avatar"},
             {"op": "add_view", "parent": "row", "child": "name"},
             {"op": "add_view", "parent": "root", "child": "row"},
             {"op": "new_component", "var": "gallery", "tag": "Button"},
             *set_attrs("gallery", {"text": "Photos"}),
             {"op": "add_view", "parent": "root", "child": "gallery"}]
    b.activity("ProfileActivity", method("onCreate", *prof),
               method("onPhotos", start("GalleryActivity")),
               method("onEdit", call("NavUtils", "openSettings")),
               layout="")
    b.activity("GalleryActivity",
               method("onCreate",
                      {"op": "inflate", "layout": "item_photo", "var": "cell"},
                      {"op": "set_adapter", "view": "grid", "view_type": "GridView",
                       "source": {"var": "cell"}}),
               layout="activity_gallery",
               page=el("LinearLayout", fill(orientation="vertical"),
                       el("GridView", fill(numColumns="2"))))
    b.layout("item_photo", el("FrameLayout", wrap(layout_width="match_parent"),
                              el("ImageView", wrap(layout_width="match_parent",
                                                   layout_height="64dp"))))
    b.activity("ShareActivity", method("onCreate"))
    b.plain("NavUtils", method("openSettings", start("SettingsActivity")))
    b.write(main="MainActivity")


def about_page():
    return el("LinearLayout", fill(orientation="vertical"),
              el("ImageView", wrap()),
              el("TextView", wrap(text="About")),
              el("TextView", wrap(text="Version 1.0")),
              el("Button", wrap(text="Licenses")))


# --- naming corpus ---------------------------------------------------------

def tree(label, *children):
    return (label, tuple(children))


def fmt(t):
    label, children = t
    if not children:
        return label
    return label + "(" + ",".join(fmt(c) for c in children) + ")"


def parse_fmt(text):
    pos = 0

    def node():
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos] not in "(),":
            pos += 1
        label, kids = text[start:pos], []
        if pos < len(text) and text[pos] == "(":
            pos += 1
            kids.append(node())
            while text[pos] == ",":
                pos += 1
                kids.append(node())
            pos += 1
        return (label, tuple(kids))

    return node()


def forest_ted(f, g):
    """Naive memoized forest distance; only used to check separation."""

    @lru_cache(maxsize=None)
    def d(f, g):
        if not f and not g:
            return 0
        if not f:
            return d(f, g[:-1] + g[-1][1]) + 1
        if not g:
            return d(f[:-1] + f[-1][1], g) + 1
        (fl, fc), (gl, gc) = f[-1], g[-1]
        return min(d(f[:-1] + fc, g) + 1,
                   d(f, g[:-1] + gc) + 1,
                   d(fc, gc) + d(f[:-1], g[:-1]) + (fl != gl))

    return d(f, g)


def ted(a, b):
    return forest_ted((a,), (b,))


def family(root, leaves):
    return tree(root, *[tree(x) for x in leaves])


# Ten layout families, pairwise at distance >= 5. Each entry is
# (tree, [(activity_name, frequency)], layout_name).
FAMILIES = [
    ("about", family("LinearLayout", ["ImageView", "TextView", "TextView", "Button"]),
     [("AboutActivity", 4), ("CreditsActivity", 2), ("InfoScreen", 1)]),
    ("help", family("ScrollView", ["WebView", "WebView", "WebView", "Toolbar", "Toolbar",
                                   "ProgressBar"]),
     [("FaqActivity", 5), ("HelpActivity", 3), ("GuideActivity", 1)]),
    ("login", family("RelativeLayout", ["EditText", "EditText", "CheckBox", "CheckBox",
                                        "ToggleButton", "ToggleButton"]),
     [("SignInActivity", 6), ("AuthActivity", 5), ("LoginActivity", 3)]),
    ("contacts", family("DrawerLayout", ["ListView", "ListView", "QuickContactBadge",
                                         "QuickContactBadge", "Chip", "Chip"]),
     [("ContactListActivity", 4), ("PeopleActivity", 2)]),
    ("search", family("CoordinatorLayout", ["SearchView", "GridView", "GridView", "Spinner",
                                            "Spinner", "Spinner"]),
     [("Searcher", 6), ("FinderActivity", 5), ("LookupActivity", 4), ("SearchActivity", 3)]),
    ("settings", tree("TableLayout", *[tree("TableRow", tree("Switch"))] * 3),
     [("SettingActivity", 5), ("OptionsActivity", 2)]),
    ("share", family("GridLayout", ["ImageSwitcher", "RatingBar", "RatingBar", "ImageButton",
                                    "ImageButton", "ImageButton"]),
     [("ShareActivity", 4), ("SendActivity", 3)]),
    ("splash", family("FrameLayout", ["VideoView", "SeekBar", "SeekBar", "SeekBar", "SeekBar",
                                      "TextClock"]),
     [("IntroActivity", 5), ("WelcomeActivity", 4), ("SplashActivity", 3)]),
    ("tracks", family("ConstraintLayout", ["RecyclerView", "RecyclerView", "MediaController",
                                           "Chronometer", "Chronometer", "Chronometer"]),
     [("TrackListActivity", 3), ("PlayerActivity", 2)]),
    ("wizard", tree("ViewPager", family("ViewFlipper", ["RadioButton", "RadioButton"]),
                    family("ViewFlipper", ["RadioButton", "RadioButton"])),
     [("WizardActivity", 4), ("OnboardingActivity", 3), ("PersonalInfoActivity", 2)]),
]

# Obfuscated test activities. Keyword cases name the expected activity;
# fallback cases have layout names without a matching token.
# (class name, family, edit applied to the family tree, layout name, expected or None)
CASES = [
    ("a", "about", "same", "about", "AboutActivity"),
    ("b", "help", "same", "activity_help", "HelpActivity"),
    ("c", "login", "drop_last", "login", "LoginActivity"),
    ("d", "contacts", "same", "contact_list", "ContactListActivity"),
    ("e", "settings", "relabel_leaf", "setting_container", "SettingActivity"),
    ("f", "share", "same", "activity_share", "ShareActivity"),
    ("g", "splash", "add_leaf", "activity_splash", "SplashActivity"),
    ("h", "tracks", "same", "list_view", "TrackListActivity"),
    ("i", "about", "add_leaf", "credits_page", "CreditsActivity"),
    ("j", "search", "relabel_leaf", "finder_main", "FinderActivity"),
    ("k", "wizard", "same", "onboarding_pager", "OnboardingActivity"),
    ("l", "login", "same", "auth_form", "AuthActivity"),
    ("m", "search", "same", "grid_base", None),
    ("n", "wizard", "drop_last", "content_extended_title", None),
    ("o", "about", "relabel_leaf", "frame_x", None),
    ("p", "help", "add_leaf", "dialog_root", None),
    ("q", "contacts", "drop_last", "row_holder", None),
    ("r", "share", "relabel_leaf", "panel_b", None),
    ("s", "splash", "same", "boot_screen", None),
    ("t", "tracks", "drop_last", "pane_one", None),
]


def apply_edit(t, edit):
    label, children = t
    if edit == "same":
        return t
    if edit == "drop_last":
        return (label, children[:-1])
    if edit == "add_leaf":
        return (label, children + (tree("View"),))
    if edit == "relabel_leaf":
        # relabel the first leaf found in preorder
        def go(n):
            l, cs = n
            if not cs:
                return ("Space", cs), True
            out, done = [], False
            for c in cs:
                if not done:
                    c, done = go(c)
                out.append(c)
            return (l, tuple(out)), done
        return go(t)[0]
    raise ValueError(edit)


def naming_fixture():
    fams = {name: (t, names) for name, t, names in FAMILIES}
    for x in FAMILIES:
        for y in FAMILIES:
            if x[0] < y[0]:
                assert ted(x[1], y[1]) >= 7, (x[0], y[0], ted(x[1], y[1]))
    # Small variants so that entries are not all identical; every variant
    # stays within distance 1 of its family tree.
    variants = ["same", "add_leaf", "relabel_leaf"]
    lines = []
    app = 0
    for fam_name, t, names in FAMILIES:
        for name, freq in names:
            for k in range(freq):
                app += 1
                lines.append({"app_id": f"org.corpus.app{app:03d}",
                              "activity_name": name,
                              "layout_name": snake(name.replace("Activity", "")),
                              "tree": fmt(apply_edit(t, variants[k % 3]))})
    assert len(lines) >= 50, len(lines)
    os.makedirs(CORPUS, exist_ok=True)
    with open(os.path.join(CORPUS, "naming_corpus.jsonl"), "w") as f:
        for rec in lines:
            f.write(json.dumps(rec, separators=(",", ":")) + "\n")

    entries = [(parse_fmt(l["tree"]), l["activity_name"]) for l in lines]
    cases = []
    for cls, fam, edit, layout, expected in CASES:
        t = apply_edit(fams[fam][0], edit)
        # Every candidate must come from the planted family.
        near = {n for e, n in entries if ted(t, e) < 5}
        assert near == {n for n, _ in fams[fam][1]}, (cls, near)
        cases.append({"class_name": cls, "tree": fmt(t), "layout_name": layout,
                      "kind": "keyword" if expected else "fallback",
                      "expected": expected})
    with open(os.path.join(CORPUS, "naming_cases.json"), "w") as f:
        json.dump(cases, f, indent=2)
        f.write("\n")

    # Demo corpus: the about family plus a few unrelated pages.
    demo_lines = [l for l in lines if l["activity_name"] in
                  ("AboutActivity", "CreditsActivity", "SignInActivity", "Searcher")]
    with open(os.path.join(CORPUS, "demo_corpus.jsonl"), "w") as f:
        for rec in demo_lines:
            f.write(json.dumps(rec, separators=(",", ":")) + "\n")


def images():
    d = os.path.join(HERE, "images")
    os.makedirs(d, exist_ok=True)

    def pgm(name, w, h, pixels):
        with open(os.path.join(d, name), "wb") as f:
            f.write(b"P5\n%d %d\n255\n" % (w, h) + bytes(pixels))

    pgm("black.pgm", 8, 4, [0] * 32)
    pgm("white.pgm", 8, 4, [255] * 32)
    pgm("half.pgm", 8, 4, ([0] * 4 + [255] * 4) * 4)
    pgm("small.pgm", 4, 4, [0] * 16)


def main():
    images()
    for gen in [activity_only_1, activity_only_2, inner_only_1, inner_only_2,
                fragment_only_1, fragment_only_2, activity_inner_1, activity_inner_2,
                activity_fragment_1, activity_fragment_2, login_triple, demo]:
        gen()
    naming_fixture()


if __name__ == "__main__":
    main()
