# polymax package
