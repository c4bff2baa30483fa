from .schobercli import main

main()
