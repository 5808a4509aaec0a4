#!/usr/bin/env python

from torifan.torifan import main

if __name__ == '__main__':
    main()
