# psworkbench documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

from psworkbench import VERSION  # NOQA

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax',
    'sphinx.ext.todo']

source_suffix = '.rst'
master_doc = 'index'

project = 'psworkbench'
version = VERSION
release = VERSION

language = "en"
exclude_patterns = ['Thumbs.db', '.DS_Store', 'modules.rst']
pygments_style = 'sphinx'
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = "sphinx_rtd_theme"

napoleon_google_docstring = True
napoleon_numpy_docstring = False
