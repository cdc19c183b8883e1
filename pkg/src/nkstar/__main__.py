from nkstar.cli import main

main()
