# Configuration file for the Sphinx documentation builder.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

import toml

sys.path.insert(0, os.path.abspath("../.."))


def get_release_version() -> str:
    """
    Get the release version from the pyproject.toml file

    :return:
    """
    pyproject = toml.load("../../pyproject.toml")
    return pyproject["project"]["version"]


# -- Project information -----------------------------------------------------

project = "gamevalue"
copyright = "2026 GameValue developers"
author = "GameValue developers"
version = get_release_version()

# -- General configuration ---------------------------------------------------

extensions = ["sphinx.ext.autodoc", "sphinx.ext.mathjax", "sphinxcontrib.autodoc_pydantic"]
autodoc_typehints = "description"
autodoc_pydantic_model_show_json = False
nitpicky = True
nitpick_ignore = [
    ("py:class", "datetime.datetime"),
    ("py:class", "numpy.ndarray"),
    ("py:class", "np.ndarray"),
    ("py:class", "sympy.Expr"),
    ("py:class", "scipy.spatial._ckdtree.cKDTree"),
    ("py:class", "ConfigDict"),
    ("py:class", "BaseModel"),
]

templates_path = ["_templates"]
exclude_patterns = []

# -- Options for HTML output -------------------------------------------------

html_theme = "pydata_sphinx_theme"
html_theme_options = {
    "external_links": [],
    "icon_links": [],
}
html_static_path = ["_static"]
