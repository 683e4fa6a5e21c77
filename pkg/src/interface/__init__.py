# Command line, polygon documents and SVG rendering
